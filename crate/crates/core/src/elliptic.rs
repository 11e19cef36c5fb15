//! Elliptic expansion of `j` around the hexagonal and square points.
//!
//! With the Cayley map rescaled by `2 pi Omega^2`, the Taylor coefficients of
//! `j(s^-1(w))` are `c_n = P_n(a, b, c, d) / n!`, where `P_n` is the `n`-th
//! derivative of `j = b^3 d` in the quasimodular ring and `(a, b, c, d)` are
//! the values of `(E2*, E4, E6, 1/Delta)` at the point measured in the unit
//! `Omega^2 / (2 Im tau*)` per weight 2. In that unit every value is rational.
//!
//! At both points `a = 0`, and one of `b`, `c` vanishes. The remaining value
//! is fixed by matching the first nonconstant coefficient (`c_3 = 13824` or
//! `c_2 = 20736`), and `d` then follows from `(b^3 - c^2) d = 1728`. Every
//! other coefficient is a prediction.
//!
//! Orientation: with `S(tau) = (tau - tau*) / (tau - conj(tau*))` the chain
//! rule contributes `(2 pi i)(tau* - conj(tau*)) = -4 pi Im tau*` per
//! derivative, so numerically `j(s^-1(w)) = sum c_n (-w)^n`. The square
//! point has only even `n` and is unaffected; at the hexagonal point the
//! degrees `3, 9, 15, ...` change sign. The formal series `sum c_n w^n` is
//! the one composed with `h/g`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::PointKind;
use crate::quasimodular::{DerivationRules, QPolynomial};
use crate::rational::Rational;
use crate::series::TruncatedSeries;

/// Calibrated data for one expansion point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CMPointSpec {
    pub kind: PointKind,
    /// Normalized `(E2*, E4, E6, 1/Delta)` at `tau*`.
    pub hat_values: [Rational; 4],
}

impl CMPointSpec {
    pub fn vanishing_modulus(&self) -> i64 {
        self.kind.vanishing_modulus()
    }

    pub fn calibration_degree(&self) -> usize {
        self.kind.calibration_degree()
    }

    pub fn calibration_value(&self) -> Rational {
        self.kind.calibration_value()
    }

    /// `(b^3 - c^2) d`, which must be 1728.
    pub fn discriminant_relation(&self) -> Rational {
        let [_, b, c, d] = &self.hat_values;
        (b.pow(3) - c.pow(2)) * d
    }

    /// Checks the vanishing pattern and the relation `(b^3 - c^2) d = 1728`.
    pub fn check_invariants(&self) -> Result<()> {
        let [a, b, c, _] = &self.hat_values;
        let pattern_ok = a.is_zero()
            && match self.kind {
                PointKind::Hexagonal => b.is_zero() && !c.is_zero(),
                PointKind::Square => c.is_zero() && !b.is_zero(),
            };
        if !pattern_ok {
            return Err(Error::CalibrationFailed(format!(
                "vanishing pattern violated at the {} point: {:?}",
                self.kind, self.hat_values
            )));
        }
        let rel = self.discriminant_relation();
        if rel != Rational::from(1728) {
            return Err(Error::CalibrationFailed(format!(
                "(b^3 - c^2) d = {rel}, expected 1728"
            )));
        }
        Ok(())
    }
}

/// Index of the generator left free by the vanishing pattern.
fn free_generator(kind: PointKind) -> usize {
    match kind {
        PointKind::Hexagonal => 2,
        PointKind::Square => 1,
    }
}

/// Solves for the free normalized value with the standard derivation rules.
pub fn calibrate(kind: PointKind) -> Result<CMPointSpec> {
    calibrate_with(kind, &DerivationRules::ramanujan())
}

/// Solves `P_m(0, ..x.., d(x)) / m! = calibration value` for the free value
/// `x`, where `d(x)` comes from the discriminant relation.
pub fn calibrate_with(kind: PointKind, rules: &DerivationRules) -> Result<CMPointSpec> {
    let m = kind.calibration_degree();
    let p_m = rules.tower(&QPolynomial::j_invariant(), m).pop().unwrap();
    let free = free_generator(kind);

    // With the vanishing pattern, d = k * x^(-p) where x is the free value
    let (k, p): (Rational, i64) = match kind {
        PointKind::Hexagonal => (Rational::from(-1728), 2),
        PointKind::Square => (Rational::from(1728), 3),
    };

    // Collect surviving monomials as coefficient * x^e
    let mut by_exponent: BTreeMap<i64, Rational> = BTreeMap::new();
    for (mono, coeff) in p_m.terms() {
        let survives = mono
            .exps
            .iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || i == free || i == 3);
        if !survives {
            continue;
        }
        let e_free = mono.exps[free] as i64;
        let e_d = mono.exps[3] as i64;
        let term = coeff * k.pow(e_d as i32);
        *by_exponent.entry(e_free - p * e_d).or_insert_with(Rational::zero) += term;
    }
    by_exponent.retain(|_, c| !c.is_zero());

    let (exp, coeff) = match by_exponent.len() {
        1 => by_exponent.into_iter().next().unwrap(),
        0 => {
            return Err(Error::CalibrationFailed(format!(
                "P_{m} vanishes identically at the {kind} point"
            )))
        }
        _ => {
            return Err(Error::CalibrationFailed(format!(
                "P_{m} is not homogeneous in the free value at the {kind} point"
            )))
        }
    };
    if exp == 0 {
        return Err(Error::CalibrationFailed(format!(
            "P_{m} does not depend on the free value at the {kind} point"
        )));
    }

    let factorial: BigInt = (2..=m as u64).fold(BigInt::one(), |acc, k| acc * k);
    let rhs = kind.calibration_value() * Rational::from_integer(factorial) / coeff;
    let x = if exp > 0 {
        rhs.exact_root(exp as u32)
    } else {
        rhs.recip().and_then(|r| r.exact_root((-exp) as u32))
    }
    .ok_or_else(|| {
        Error::CalibrationFailed(format!("x^{exp} = {rhs} has no rational solution"))
    })?;

    let d = &k / &x.pow(p as i32);
    let mut hat_values: [Rational; 4] = Default::default();
    hat_values[free] = x;
    hat_values[3] = d;
    let spec = CMPointSpec { kind, hat_values };
    spec.check_invariants()?;
    Ok(spec)
}

/// `[P_0, ..., P_order]` for `j` under `rules`.
pub fn derivative_tower(rules: &DerivationRules, order: usize) -> Vec<QPolynomial> {
    rules.tower(&QPolynomial::j_invariant(), order)
}

/// `sum_{n <= order} P_n(hats) / n! w^n` from a precomputed tower.
pub fn expansion_from_tower(spec: &CMPointSpec, tower: &[QPolynomial], order: i64) -> TruncatedSeries {
    assert!(tower.len() as i64 > order, "tower too short for order {order}");
    let mut fact = Rational::one();
    let coeffs = (0..=order)
        .map(|n| {
            if n > 1 {
                fact *= Rational::from(n);
            }
            tower[n as usize].eval(&spec.hat_values) / &fact
        })
        .collect();
    TruncatedSeries::new(0, coeffs)
}

/// Elliptic expansion `j(s^-1(w))` through `w^order` with the standard rules.
pub fn elliptic_j_series(kind: PointKind, order: i64) -> Result<TruncatedSeries> {
    if order < 0 {
        return Err(Error::InvalidOrder { order, min: 0 });
    }
    let rules = DerivationRules::ramanujan();
    let spec = calibrate_with(kind, &rules)?;
    let tower = derivative_tower(&rules, order as usize);
    Ok(expansion_from_tower(&spec, &tower, order))
}

/// Degrees `n <= order` breaking the vanishing pattern `c_n = 0` unless the
/// modulus divides `n`.
pub fn vanishing_violations(kind: PointKind, series: &TruncatedSeries) -> Vec<i64> {
    series
        .nonzero_terms()
        .map(|(n, _)| n)
        .filter(|n| n % kind.vanishing_modulus() != 0)
        .collect()
}
