//! Taylor coefficients of j around the hexagonal and square points.
//!
//!     cargo run --example elliptic_expansion -- 18

use lg_moonshine::emit::short_value;
use lg_moonshine::{calibrate, elliptic_j_series, PointKind};

fn main() -> lg_moonshine::Result<()> {
    let order: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(12);
    for kind in PointKind::ALL {
        let spec = calibrate(kind)?;
        let hats: Vec<String> = spec.hat_values.iter().map(short_value).collect();
        println!("{kind} point, normalized (E2*, E4, E6, 1/Delta) = ({})", hats.join(", "));
        let s = elliptic_j_series(kind, order)?;
        for (n, c) in s.nonzero_terms() {
            println!("  w^{n:<3} {}", short_value(c));
        }
    }
    Ok(())
}
