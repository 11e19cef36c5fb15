//! One line per acceptance criterion, run as `cargo test --test acceptance`.
//! Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lg_moonshine::cli;
use lg_moonshine::elliptic::vanishing_violations;
use lg_moonshine::numerics::{e2_star_numeric, j_numeric, j_qexp, HalfPlanePoint, Uniformizer};
use lg_moonshine::selftest::{run_selftest, run_suite};
use lg_moonshine::verify::{composed_series, run_verify_with};
use lg_moonshine::{elliptic_j_series, FaultInjection, PointKind, Rational, VerificationReport};
use num_complex::Complex64;

const ELLIPTIC_BUDGET: Duration = Duration::from_secs(1);
const VERIFY_BUDGET: Duration = Duration::from_secs(5);
const NUMERIC_TOL: f64 = 1e-4;
const J_I_REL: f64 = 1e-9;
const J_RHO_ABS: f64 = 1e-6;
const E2_STAR_ABS: f64 = 1e-8;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn expect_coeffs(kind: PointKind, order: i64, want: &[(i64, Rational)]) -> Outcome {
    let start = Instant::now();
    let s = elliptic_j_series(kind, order).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    for (deg, v) in want {
        let got = s.coeff(*deg).unwrap();
        if &got != v {
            return Err(format!("c_{deg} = {got}, expected {v}"));
        }
    }
    if took >= ELLIPTIC_BUDGET {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("{} coefficients exact in {:.1} ms", want.len(), took.as_secs_f64() * 1e3))
}

fn criterion_1() -> Outcome {
    expect_coeffs(
        PointKind::Hexagonal,
        12,
        &[(3, r(13824, 1)), (6, r(-39744, 1)), (9, r(1920024, 35)), (12, r(-1736613, 35))],
    )
}

fn criterion_2() -> Outcome {
    expect_coeffs(
        PointKind::Square,
        8,
        &[
            (0, r(1728, 1)),
            (2, r(20736, 1)),
            (4, r(105984, 1)),
            (6, r(1594112, 5)),
            (8, r(3398656, 5)),
        ],
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let out = cli::run(["lg-moonshine", "verify", "--point", "both", "--order", "24", "--format", "json"]);
    let took = start.elapsed();
    if out.code != 0 {
        return Err(format!("exit code {}: {}", out.code, out.stderr));
    }
    let reports: Vec<VerificationReport> = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    if reports.len() != 2 {
        return Err(format!("{} reports", reports.len()));
    }
    for rep in &reports {
        if !rep.verified || rep.first_mismatch.is_some() || rep.checked_degrees != (0..=24).collect::<Vec<_>>() {
            return Err(format!("{} not verified through t^24", rep.point));
        }
    }
    if took >= VERIFY_BUDGET {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("both points verified through t^24 in {:.0} ms", took.as_secs_f64() * 1e3))
}

fn criterion_4() -> Outcome {
    let cases = [
        (PointKind::Hexagonal, vec![(3, 13824), (6, -46656), (9, 99144), (12, -171315), (15, 263169)]),
        (PointKind::Square, vec![(0, 1728), (2, 20736), (4, 147456), (6, 851968), (8, 4456448)]),
    ];
    for (kind, want) in cases {
        let s = composed_series(kind, 24, &FaultInjection::none()).map_err(|e| e.to_string())?;
        for (deg, v) in want {
            let got = s.coeff(deg).unwrap();
            if got != Rational::from(v) {
                return Err(format!("{kind} t^{deg}: {got}, expected {v}"));
            }
        }
    }
    Ok("ten printed composed coefficients match".into())
}

fn criterion_5() -> Outcome {
    let mut denominators = Vec::new();
    for kind in PointKind::ALL {
        let composed = composed_series(kind, 24, &FaultInjection::none()).map_err(|e| e.to_string())?;
        if !composed.truncate(24).is_integral() {
            return Err(format!("{kind}: composed side has a non-integral coefficient"));
        }
        let elliptic = elliptic_j_series(kind, 24).map_err(|e| e.to_string())?;
        if elliptic.is_integral() {
            return Err(format!("{kind}: elliptic series unexpectedly integral"));
        }
        for (_, c) in elliptic.nonzero_terms() {
            let d = c.denom().to_string();
            if d != "1" && !denominators.contains(&d) {
                denominators.push(d);
            }
        }
    }
    for needed in ["35", "5"] {
        if !denominators.iter().any(|d| d == needed) {
            return Err(format!("denominator {needed} never appears"));
        }
    }
    Ok(format!("composed sides integral; elliptic denominators include {}", denominators[..4.min(denominators.len())].join(", ")))
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    for name in ["homogeneity", "leibniz", "ramanujan-q-consistency"] {
        let res = run_suite(name, &FaultInjection::none()).expect("suite exists");
        if !res.passed {
            return Err(res.line());
        }
        parts.push(res.detail);
    }
    Ok(parts.join("; "))
}

fn criterion_7() -> Outcome {
    let j = j_qexp(3).map_err(|e| e.to_string())?;
    for (deg, v) in [(-1, 1i64), (0, 744), (1, 196884), (3, 864299970)] {
        if j.coeff(deg) != Some(Rational::from(v)) {
            return Err(format!("q^{deg}: {:?}", j.coeff(deg)));
        }
    }
    let q2 = j.coeff(2).unwrap();
    let flag = if q2 == Rational::from(21393760) { "matches" } else { "DIFFERS from" };
    Ok(format!("1, 744, 196884, 864299970 exact; q^2 = {} ({flag} the printed 21393760)", q2.numer()))
}

fn criterion_8() -> Outcome {
    let kind = PointKind::Square;
    let series = elliptic_j_series(kind, 20).map_err(|e| e.to_string())?;
    let s = Uniformizer::rescaled(kind);
    let mut worst = 0f64;
    for w0 in [0.01, 0.02] {
        let tau = s.inverse(Complex64::new(w0, 0.0)).map_err(|e| e.to_string())?;
        let j = j_numeric(HalfPlanePoint::from_complex(tau).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let err = (series.eval_f64(w0) - j).norm() / (1.0 + j.norm());
        worst = worst.max(err);
        if err >= NUMERIC_TOL {
            return Err(format!("w = {w0}: scaled error {err:e}"));
        }
    }
    let at = |kind: PointKind| HalfPlanePoint::from_complex(kind.tau_star()).unwrap();
    let ji = j_numeric(at(PointKind::Square)).map_err(|e| e.to_string())?;
    let jr = j_numeric(at(PointKind::Hexagonal)).map_err(|e| e.to_string())?;
    if (ji - 1728.0).norm() / 1728.0 >= J_I_REL {
        return Err(format!("j(i) = {ji}"));
    }
    if jr.norm() >= J_RHO_ABS {
        return Err(format!("j(rho) = {jr}"));
    }
    let mut e2 = 0f64;
    for kind in PointKind::ALL {
        e2 = e2.max(e2_star_numeric(at(kind)).map_err(|e| e.to_string())?.norm());
    }
    if e2 >= E2_STAR_ABS {
        return Err(format!("|E2*| = {e2:e}"));
    }
    Ok(format!(
        "square series error {worst:.1e}; |j(i)-1728|/1728 = {:.1e}; |j(rho)| = {:.1e}; max |E2*| = {e2:.1e}",
        (ji - 1728.0).norm() / 1728.0,
        jr.norm()
    ))
}

/// First degree where a faulty elliptic series departs from the clean one.
fn elliptic_departure(kind: PointKind, faults: &FaultInjection) -> Result<Option<i64>, String> {
    let clean = elliptic_j_series(kind, 24).map_err(|e| e.to_string())?;
    let dirty = faults.elliptic_series(kind, 24).map_err(|e| e.to_string())?;
    Ok(clean.first_mismatch(&dirty).map(|m| m.degree))
}

/// The fault must fail some selftest suite (all of them, or just the two
/// that read the elliptic series when `full` is false) and, at every point where the
/// elliptic series changes, produce a verify mismatch at that same degree.
fn fault_is_caught(label: &str, faults: &FaultInjection, full: bool) -> Outcome {
    let results = if full {
        run_selftest(faults)
    } else {
        ["elliptic-expansion", "conjecture"].iter().filter_map(|n| run_suite(n, faults)).collect()
    };
    let failed: Vec<&str> = results.into_iter().filter(|s| !s.passed).map(|s| s.name).collect();
    if failed.is_empty() {
        return Err(format!("{label}: every selftest suite passed"));
    }
    let mut localized = 0;
    for kind in PointKind::ALL {
        let Some(deg) = elliptic_departure(kind, faults)? else { continue };
        let rep = run_verify_with(kind, 24, faults).map_err(|e| e.to_string())?;
        match rep.first_mismatch {
            Some(m) if m.degree == deg => localized += 1,
            other => return Err(format!("{label} at {kind}: series departs at w^{deg}, verify reports {other:?}")),
        }
    }
    if localized == 0 {
        return Err(format!("{label}: no point localized the fault"));
    }
    Ok(format!("{label}: {}", failed.join("+")))
}

fn criterion_9() -> Outcome {
    let mut caught = 0;
    let one = Rational::one();
    for g in 0..4 {
        fault_is_caught(&format!("rule {g}"), &FaultInjection::none().with_scaled_rule(g, r(3, 4)), true)?;
        caught += 1;
        let mut f = FaultInjection::none();
        for kind in PointKind::ALL {
            let spec = f.point_spec(kind).map_err(|e| e.to_string())?;
            f = f.with_hat(kind, g, &spec.hat_values[g] + &one);
        }
        fault_is_caught(&format!("hat {g}"), &f, true)?;
        caught += 1;
    }
    for kind in PointKind::ALL {
        let clean = elliptic_j_series(kind, 24).map_err(|e| e.to_string())?;
        if !vanishing_violations(kind, &clean).is_empty() {
            return Err(format!("{kind}: clean series breaks its vanishing pattern"));
        }
        for deg in 0..=24 {
            let f = FaultInjection::none().with_elliptic_offset(kind, deg, one.clone());
            fault_is_caught(&format!("{kind} c_{deg}"), &f, false)?;
            caught += 1;
        }
    }
    Ok(format!("{caught} injected faults caught and localized"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("hexagonal elliptic expansion", criterion_1),
        ("square elliptic expansion", criterion_2),
        ("conjecture through t^24", criterion_3),
        ("printed composed prefixes", criterion_4),
        ("integrality", criterion_5),
        ("structural invariants", criterion_6),
        ("j q-expansion oracle", criterion_7),
        ("numeric cross-validation", criterion_8),
        ("fault injection", criterion_9),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {} ({name}): {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
