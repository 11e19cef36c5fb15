//! Compose the elliptic expansion with h/g and compare against the closed
//! form, then show what an injected fault looks like.

use lg_moonshine::verify::run_verify_with;
use lg_moonshine::{run_verify, FaultInjection, PointKind, Rational};

fn main() -> lg_moonshine::Result<()> {
    let order = 24;
    for kind in PointKind::ALL {
        let rep = run_verify(kind, order)?;
        println!(
            "{kind}: verified = {}, integral = {}, {} nonzero coefficients, {} ms",
            rep.verified,
            rep.integrality_ok,
            rep.composed.len(),
            rep.elapsed_ms
        );
    }

    let faults = FaultInjection::none().with_elliptic_offset(PointKind::Hexagonal, 12, Rational::one());
    let rep = run_verify_with(PointKind::Hexagonal, order, &faults)?;
    if let Some(m) = rep.first_mismatch {
        println!("with c_12 + 1: first mismatch at t^{} ({} vs {})", m.degree, m.lhs, m.rhs);
    }
    Ok(())
}
