//! Sum the exact elliptic series at small w and compare with j evaluated
//! from its q-series at the preimage point in the upper half-plane.

use lg_moonshine::numerics::{e2_star_numeric, j_numeric, omega, HalfPlanePoint, Uniformizer};
use lg_moonshine::{elliptic_j_series, PointKind};
use num_complex::Complex64;

fn main() -> lg_moonshine::Result<()> {
    for kind in PointKind::ALL {
        let tau = HalfPlanePoint::from_complex(kind.tau_star())?;
        println!(
            "{kind}: tau* = {:.6}, Omega = {:.12}, j(tau*) = {:.6}, |E2*(tau*)| = {:.1e}",
            kind.tau_star(),
            omega(kind),
            j_numeric(tau)?.re,
            e2_star_numeric(tau)?.norm()
        );
        let series = elliptic_j_series(kind, 20)?;
        let s = Uniformizer::rescaled(kind);
        for w in [0.01, 0.02, 0.05] {
            // odd coefficients belong to j(s^-1(-w)) with this orientation of s
            let tau = HalfPlanePoint::from_complex(s.inverse(Complex64::new(-w, 0.0))?)?;
            let exact = series.eval_f64(w);
            let numeric = j_numeric(tau)?;
            println!("  w = {w}: series {exact:.12}, q-series {:.12}, diff {:.1e}", numeric.re, (exact - numeric).norm());
        }
    }
    Ok(())
}
