//! Invariant suites run by `selftest`.
//!
//! Every suite takes the same [`FaultInjection`] so that a corrupted rule,
//! hat value or coefficient can be shown to trip at least one of them.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::closed_form::{conjecture_rhs, hesse_j};
use crate::elliptic::{derivative_tower, vanishing_violations};
use crate::emit::short_value;
use crate::error::Result;
use crate::flat::{flat_ratio, multifactorial, CurveKind};
use crate::numerics::{
    delta_qexp, e2_star_numeric, eisenstein_numeric, eisenstein_qexp, inverse_delta_qexp, j_numeric, j_qexp,
    weight_two_unit, HalfPlanePoint, Uniformizer,
};
use crate::point::PointKind;
use crate::quasimodular::{QMonomial, QPolynomial};
use crate::rational::Rational;
use crate::series::TruncatedSeries;
use crate::verify::{run_verify_with, FaultInjection};

/// Order used by the exact checks in these suites.
pub const SELFTEST_ORDER: i64 = 24;
/// q-expansion order for the Ramanujan consistency checks.
pub const Q_CONSISTENCY_ORDER: i64 = 30;
/// Random trials per algebraic law.
pub const RANDOM_TRIALS: usize = 100;

pub const E2_STAR_TOL: f64 = 1e-8;
pub const CALIBRATION_REL_TOL: f64 = 1e-8;
pub const J_AT_I_REL_TOL: f64 = 1e-9;
pub const J_AT_RHO_ABS_TOL: f64 = 1e-6;
pub const MODULARITY_REL_TOL: f64 = 1e-8;
pub const ROUND_TRIP_TOL: f64 = 1e-12;
/// Relative tolerance, scaled by `1 + |j|`, for the elliptic series against numeric `j`.
pub const ELLIPTIC_NUMERIC_TOL: f64 = 1e-4;
pub const ELLIPTIC_NUMERIC_TERMS: i64 = 20;
pub const ELLIPTIC_NUMERIC_POINTS: [f64; 2] = [0.01, 0.02];

/// Reference elliptic coefficients `(degree, numerator, denominator)`. The
/// calibration degree is excluded: it is an input.
pub const REFERENCE_ELLIPTIC_HEXAGONAL: [(i64, i64, i64); 3] =
    [(6, -39744, 1), (9, 1920024, 35), (12, -1736613, 35)];
pub const REFERENCE_ELLIPTIC_SQUARE: [(i64, i64, i64); 4] =
    [(0, 1728, 1), (4, 105984, 1), (6, 1594112, 5), (8, 3398656, 5)];

/// Reference closed-form coefficients `(degree, value)`.
pub const REFERENCE_CLOSED_HEXAGONAL: [(i64, i64); 5] =
    [(3, 13824), (6, -46656), (9, 99144), (12, -171315), (15, 263169)];
pub const REFERENCE_CLOSED_SQUARE: [(i64, i64); 5] =
    [(0, 1728), (2, 20736), (4, 147456), (6, 851968), (8, 4456448)];

/// Known coefficients of `j` at `q^-1, q^0, q^1, q^3`.
pub const REFERENCE_J_QEXP: [(i64, i64); 4] = [(-1, 1), (0, 744), (1, 196884), (3, 864299970)];
/// Value of the `q^2` coefficient that circulates as a misprint.
pub const MISPRINTED_J_Q2: i64 = 21393760;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl SuiteResult {
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        format!("{tag} {}: {}", self.name, self.detail)
    }
}

type SuiteFn = fn(&FaultInjection) -> std::result::Result<String, String>;

pub const SUITES: [(&str, SuiteFn); 13] = [
    ("series-ring-laws", suite_series_laws),
    ("leibniz", suite_leibniz),
    ("homogeneity", suite_homogeneity),
    ("ramanujan-q-consistency", suite_ramanujan),
    ("e2-star-vanishing", suite_e2_star),
    ("calibration", suite_calibration),
    ("elliptic-expansion", suite_elliptic),
    ("flat-coordinate", suite_flat),
    ("closed-form", suite_closed_form),
    ("j-qexp", suite_j_qexp),
    ("numeric-j", suite_numeric_j),
    ("numeric-elliptic-crosscheck", suite_numeric_elliptic),
    ("conjecture", suite_conjecture),
];

pub fn run_selftest(faults: &FaultInjection) -> Vec<SuiteResult> {
    SUITES
        .iter()
        .map(|(name, f)| {
            let (passed, detail) = match f(faults) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            SuiteResult { name, passed, detail }
        })
        .collect()
}

pub fn run_suite(name: &str, faults: &FaultInjection) -> Option<SuiteResult> {
    SUITES.iter().find(|(n, _)| *n == name).map(|(name, f)| {
        let (passed, detail) = match f(faults) {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        SuiteResult { name, passed, detail }
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn random_rational(rng: &mut StdRng) -> Rational {
    Rational::new(rng.random_range(-9i64..=9), rng.random_range(1i64..=6))
}

fn random_series(rng: &mut StdRng, min_val: i64) -> TruncatedSeries {
    let val = rng.random_range(min_val..=min_val + 1);
    let len = rng.random_range(6..=10);
    let mut coeffs: Vec<Rational> = (0..len).map(|_| random_rational(rng)).collect();
    if coeffs[0].is_zero() {
        coeffs[0] = Rational::one();
    }
    TruncatedSeries::new(val, coeffs)
}

fn suite_series_laws(_: &FaultInjection) -> std::result::Result<String, String> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    for trial in 0..RANDOM_TRIALS {
        let a = random_series(&mut rng, 0);
        let b = random_series(&mut rng, 0);
        let c = random_series(&mut rng, 0);
        ensure(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), || format!("associativity, trial {trial}"))?;
        ensure(a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c)), || format!("distributivity, trial {trial}"))?;
        ensure(a.mul(&b) == b.mul(&a), || format!("commutativity, trial {trial}"))?;

        let inv = lift(a.invert())?;
        let prod = a.mul(&inv);
        ensure(prod == TruncatedSeries::one(prod.truncation()), || format!("a * a^-1 != 1, trial {trial}"))?;

        let f = random_series(&mut rng, 0);
        let g = random_series(&mut rng, 1);
        let h = random_series(&mut rng, 1);
        let left = lift(f.compose(&lift(g.compose(&h))?))?;
        let right = lift(lift(f.compose(&g))?.compose(&h))?;
        ensure(left == right, || format!("composition associativity, trial {trial}"))?;

        for s in [&a, &prod, &left] {
            for x in s.coefficients() {
                let g = num_integer::Integer::gcd(x.numer(), x.denom());
                ensure(x.denom() > &0.into() && (x.is_zero() || g == 1.into()), || {
                    format!("non-canonical coefficient {x:?}")
                })?;
            }
        }
    }
    Ok(format!("{RANDOM_TRIALS} random trials of ring, inverse and composition laws"))
}

fn random_qpoly(rng: &mut StdRng) -> QPolynomial {
    let n = rng.random_range(1..=4);
    QPolynomial::from_terms((0..n).map(|_| {
        let m = QMonomial::new(
            rng.random_range(0..=2),
            rng.random_range(0..=2),
            rng.random_range(0..=2),
            rng.random_range(0..=2),
        );
        (m, random_rational(rng))
    }))
}

fn suite_leibniz(faults: &FaultInjection) -> std::result::Result<String, String> {
    let rules = faults.rules();
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    for trial in 0..RANDOM_TRIALS {
        let p = random_qpoly(&mut rng);
        let q = random_qpoly(&mut rng);
        let lhs = rules.derive(&p.mul(&q));
        let rhs = rules.derive(&p).mul(&q).add(&p.mul(&rules.derive(&q)));
        ensure(lhs == rhs, || format!("Leibniz law fails on trial {trial}: p = {p}, q = {q}"))?;
    }
    Ok(format!("{RANDOM_TRIALS} random polynomial pairs"))
}

fn suite_homogeneity(faults: &FaultInjection) -> std::result::Result<String, String> {
    let max = 2 * SELFTEST_ORDER as usize;
    let tower = derivative_tower(&faults.rules(), max);
    for (n, p) in tower.iter().enumerate() {
        let w = lift(p.weight())?;
        ensure(w == 2 * n as i64, || format!("P_{n} has weight {w}, expected {}", 2 * n))?;
    }
    Ok(format!("P_n homogeneous of weight 2n for n <= {max}"))
}

fn suite_ramanujan(faults: &FaultInjection) -> std::result::Result<String, String> {
    let order = Q_CONSISTENCY_ORDER;
    let pad = order + 2;
    let e2 = lift(eisenstein_qexp(2, pad))?;
    let e4 = lift(eisenstein_qexp(4, pad))?;
    let e6 = lift(eisenstein_qexp(6, pad))?;
    let inv_delta = lift(inverse_delta_qexp(pad))?;
    let vals = [e2, e4, e6, inv_delta];
    let rules = faults.rules();
    for (i, name) in ["E2", "E4", "E6", "1/Delta"].iter().enumerate() {
        let lhs = vals[i].theta().truncate(order);
        let rhs = lift(rules.images[i].eval_series(&vals))?.truncate(order);
        ensure(lhs.truncation() >= order && rhs.truncation() >= order, || {
            format!("{name}: insufficient precision")
        })?;
        if let Some(m) = lhs.first_mismatch(&rhs) {
            return Err(format!(
                "D {name} disagrees with its derivation rule at q^{}: {} vs {}",
                m.degree, m.lhs, m.rhs
            ));
        }
    }
    // D Delta = E2 Delta
    let delta = lift(delta_qexp(pad))?;
    let lhs = delta.theta().truncate(order);
    let rhs = vals[0].mul(&delta).truncate(order);
    if let Some(m) = lhs.first_mismatch(&rhs) {
        return Err(format!("D Delta != E2 Delta at q^{}", m.degree));
    }
    Ok(format!("all four rules and D Delta = E2 Delta hold through q^{order}"))
}

fn suite_e2_star(faults: &FaultInjection) -> std::result::Result<String, String> {
    let mut worst = 0f64;
    for kind in PointKind::ALL {
        let tau = lift(HalfPlanePoint::from_complex(kind.tau_star()))?;
        let v = lift(e2_star_numeric(tau))?.norm();
        worst = worst.max(v);
        ensure(v < E2_STAR_TOL, || format!("|E2*(tau*)| = {v:e} at the {kind} point"))?;
        let spec = lift(faults.point_spec(kind))?;
        ensure(spec.hat_values[0].is_zero(), || {
            format!("normalized E2* at the {kind} point is {}, numerics say 0", spec.hat_values[0])
        })?;
    }
    Ok(format!("max |E2*(tau*)| = {worst:.2e}"))
}

fn suite_calibration(faults: &FaultInjection) -> std::result::Result<String, String> {
    let mut details = Vec::new();
    for kind in PointKind::ALL {
        let spec = lift(faults.point_spec(kind))?;
        lift(spec.check_invariants())?;
        let tau = lift(HalfPlanePoint::from_complex(kind.tau_star()))?;
        let unit = weight_two_unit(kind);
        // compare the free value with the q-series value of E4 or E6 in the weight-2 unit
        let (weight, hat) = match kind {
            PointKind::Hexagonal => (6, &spec.hat_values[2]),
            PointKind::Square => (4, &spec.hat_values[1]),
        };
        let numeric = lift(eisenstein_numeric(weight, tau))?.re / unit.powi(weight as i32 / 2);
        let rel = (numeric - hat.to_f64()).abs() / hat.to_f64().abs();
        ensure(rel < CALIBRATION_REL_TOL, || {
            format!("{kind}: E{weight}(tau*) / v^{} = {numeric}, calibrated {hat}", weight / 2)
        })?;
        details.push(format!("{kind} ({})", spec.hat_values.iter().map(short_value).collect::<Vec<_>>().join(", ")));
    }
    Ok(details.join("; "))
}

fn suite_elliptic(faults: &FaultInjection) -> std::result::Result<String, String> {
    let check = |kind: PointKind, refs: &[(i64, i64, i64)]| -> std::result::Result<(), String> {
        let s = lift(faults.elliptic_series(kind, SELFTEST_ORDER))?;
        for &(deg, n, d) in refs {
            let got = s.coeff(deg).unwrap();
            ensure(got == Rational::new(n, d), || {
                format!("{kind} c_{deg} = {got}, expected {}", Rational::new(n, d))
            })?;
        }
        let bad = vanishing_violations(kind, &s);
        ensure(bad.is_empty(), || format!("{kind}: nonzero coefficients at degrees {bad:?}"))?;
        ensure(!s.is_integral(), || format!("{kind}: expected non-integral coefficients"))
    };
    check(PointKind::Hexagonal, &REFERENCE_ELLIPTIC_HEXAGONAL)?;
    check(PointKind::Square, &REFERENCE_ELLIPTIC_SQUARE)?;
    Ok(format!("reference coefficients and vanishing pattern through w^{SELFTEST_ORDER}"))
}

fn suite_flat(_: &FaultInjection) -> std::result::Result<String, String> {
    for step in [3u32, 4] {
        for m in 1..=100i64 {
            ensure(multifactorial(m, step) == m * multifactorial(m - step as i64, step), || {
                format!("multifactorial recursion fails at ({m}, {step})")
            })?;
        }
    }
    for (kind, modulus, residue) in [(CurveKind::Cubic, 3, 1), (CurveKind::Quartic, 2, 1)] {
        let u = lift(flat_ratio(kind, SELFTEST_ORDER))?;
        ensure(u.coeff(0) == Some(Rational::zero()) && u.coeff(1) == Some(Rational::one()), || {
            format!("{kind}: u = t + ... violated")
        })?;
        let bad: Vec<i64> = u.nonzero_terms().map(|(n, _)| n).filter(|n| n % modulus != residue).collect();
        ensure(bad.is_empty(), || format!("{kind}: unexpected support {bad:?}"))?;
    }
    Ok("multifactorial recursion and support patterns".into())
}

fn suite_closed_form(_: &FaultInjection) -> std::result::Result<String, String> {
    let n = SELFTEST_ORDER;
    let hex = lift(conjecture_rhs(PointKind::Hexagonal, n))?;
    let sq = lift(conjecture_rhs(PointKind::Square, n))?;
    for (refs, s, kind) in [
        (&REFERENCE_CLOSED_HEXAGONAL, &hex, PointKind::Hexagonal),
        (&REFERENCE_CLOSED_SQUARE, &sq, PointKind::Square),
    ] {
        for &(deg, v) in refs.iter() {
            ensure(s.coeff(deg) == Some(Rational::from(v)), || format!("{kind} closed form at t^{deg}"))?;
        }
        ensure(s.is_integral(), || format!("{kind} closed form has non-integral coefficients"))?;
    }
    ensure(lift(square_identity(n))? == sq, || {
        "square closed form fails the 64(3+4t^2)^3/(1-4t^2)^2 identity".into()
    })?;
    ensure(lift(hexagonal_via_cube(n))? == hex, || {
        "hexagonal closed form disagrees with substitution s = t^3".into()
    })?;
    ensure(hesse_j(&Rational::one()).ok() == Some(Rational::new(9261, 8)), || "hesse_j(1)".into())?;
    Ok(format!("reference expansions, identities and integrality through t^{n}"))
}

/// `64 (3 + 4t^2)^3 / (1 - 4t^2)^2`.
fn square_identity(n: i64) -> Result<TruncatedSeries> {
    let num = TruncatedSeries::from_int_poly(&[3, 0, 4], n).pow(3)?;
    let den = TruncatedSeries::from_int_poly(&[1, 0, -4], n).pow(-2)?;
    Ok(num.mul(&den).scale(&Rational::from(64)).truncate(n))
}

/// `27 s (8 - s)^3 / (1 + s)^3` expanded in `s`, then `s = t^3`.
fn hexagonal_via_cube(n: i64) -> Result<TruncatedSeries> {
    let m = n / 3;
    let num = TruncatedSeries::from_int_poly(&[8, -1], m).pow(3)?;
    let den = TruncatedSeries::from_int_poly(&[1, 1], m).pow(-3)?;
    let in_s = num.mul(&den).mul(&TruncatedSeries::from_int_poly(&[0, 27], m));
    Ok(in_s.compose(&TruncatedSeries::from_int_poly(&[0, 0, 0, 1], n))?.truncate(n))
}

fn suite_j_qexp(_: &FaultInjection) -> std::result::Result<String, String> {
    let j = lift(j_qexp(3))?;
    for (deg, v) in REFERENCE_J_QEXP {
        ensure(j.coeff(deg) == Some(Rational::from(v)), || format!("j coefficient at q^{deg}"))?;
    }
    let q2 = j.coeff(2).unwrap();
    let note = if q2 != Rational::from(MISPRINTED_J_Q2) {
        format!(" (differs from the misprinted {MISPRINTED_J_Q2})")
    } else {
        String::new()
    };
    Ok(format!("1, 744, 196884 and 864299970 confirmed; q^2 coefficient computed as {}{note}", short_value(&q2)))
}

fn suite_numeric_j(_: &FaultInjection) -> std::result::Result<String, String> {
    let i = lift(HalfPlanePoint::new(0.0, 1.0))?;
    let ji = lift(j_numeric(i))?;
    ensure((ji - 1728.0).norm() / 1728.0 < J_AT_I_REL_TOL, || format!("j(i) = {ji}"))?;
    let rho = lift(HalfPlanePoint::from_complex(PointKind::Hexagonal.tau_star()))?;
    let jr = lift(j_numeric(rho))?;
    ensure(jr.norm() < J_AT_RHO_ABS_TOL, || format!("j(rho) = {jr}"))?;

    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    for _ in 0..20 {
        // Im(-1/tau) = Im(tau)/|tau|^2 stays above 0.5 in this box
        let tau = Complex64::new(rng.random_range(-0.5..0.5), rng.random_range(1.0..1.9));
        let a = lift(j_numeric(lift(HalfPlanePoint::from_complex(tau))?))?;
        let b = lift(j_numeric(lift(HalfPlanePoint::from_complex(-1.0 / tau))?))?;
        ensure((a - b).norm() / a.norm() < MODULARITY_REL_TOL, || format!("j(tau) != j(-1/tau) at {tau}"))?;
    }
    for kind in PointKind::ALL {
        for scaled in [false, true] {
            let u = Uniformizer { kind, scaled };
            for _ in 0..RANDOM_TRIALS {
                let tau = Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(0.1..3.0));
                let back = lift(u.inverse(lift(u.forward(tau))?))?;
                ensure((back - tau).norm() < ROUND_TRIP_TOL, || format!("S^-1(S({tau})) = {back}"))?;
            }
        }
    }
    Ok(format!("j(i) = {:.6}, |j(rho)| = {:.1e}, modularity and uniformizer round trips", ji.re, jr.norm()))
}

fn suite_numeric_elliptic(faults: &FaultInjection) -> std::result::Result<String, String> {
    let mut worst = 0f64;
    for kind in PointKind::ALL {
        let series = lift(faults.elliptic_series(kind, ELLIPTIC_NUMERIC_TERMS))?;
        let s = Uniformizer::rescaled(kind);
        for w0 in ELLIPTIC_NUMERIC_POINTS {
            let exact = series.eval_f64(w0);
            // the coefficients are those of w -> j(s^-1(-w)); only odd degrees notice
            let tau = lift(s.inverse(Complex64::new(-w0, 0.0)))?;
            let j = lift(j_numeric(lift(HalfPlanePoint::from_complex(tau))?))?;
            let err = (exact - j).norm() / (1.0 + j.norm());
            worst = worst.max(err);
            ensure(err < ELLIPTIC_NUMERIC_TOL, || {
                format!("{kind} at w = {w0}: series {exact}, numeric j {j}")
            })?;
        }
    }
    Ok(format!("max scaled error {worst:.1e} at w in {ELLIPTIC_NUMERIC_POINTS:?}"))
}

fn suite_conjecture(faults: &FaultInjection) -> std::result::Result<String, String> {
    let mut parts = Vec::new();
    for kind in PointKind::ALL {
        let rep = lift(run_verify_with(kind, SELFTEST_ORDER, faults))?;
        if let Some(m) = &rep.first_mismatch {
            return Err(format!("{kind}: first mismatch at t^{}: {} vs {}", m.degree, m.lhs, m.rhs));
        }
        ensure(rep.integrality_ok, || format!("{kind}: non-integral composed coefficients"))?;
        parts.push(format!("{kind} verified through t^{}", rep.order));
    }
    Ok(parts.join(", "))
}
