//! Exact q-expansions of the Eisenstein series, `Delta` and `j`, plus the
//! double-precision tools used as independent oracles: `j` on the upper
//! half-plane, the Cayley uniformizers and the Chowla-Selberg periods.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Pow, Zero};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::point::PointKind;
use crate::rational::Rational;
use crate::series::TruncatedSeries;

/// Number of q-expansion terms summed by the numeric evaluators.
pub const NUMERIC_TERMS: usize = 40;

/// Numeric evaluation needs `|q| <= exp(-pi)`.
pub const MIN_IMAG: f64 = 0.5;

/// `sum_{d | n} d^k`.
pub fn divisor_sigma(k: u32, n: u64) -> BigInt {
    assert!(n >= 1, "divisor_sigma needs n >= 1");
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += Pow::pow(BigInt::from(d), k);
            let e = n / d;
            if e != d {
                total += Pow::pow(BigInt::from(e), k);
            }
        }
        d += 1;
    }
    total
}

/// Normalized Eisenstein series `E_2`, `E_4` or `E_6` through `q^order`.
pub fn eisenstein_qexp(weight: u32, order: i64) -> Result<TruncatedSeries> {
    let factor: i64 = match weight {
        2 => -24,
        4 => 240,
        6 => -504,
        _ => return Err(Error::Domain(format!("no Eisenstein series of weight {weight} here"))),
    };
    if order < 0 {
        return Err(Error::InvalidOrder { order, min: 0 });
    }
    let mut coeffs = Vec::with_capacity(order as usize + 1);
    coeffs.push(Rational::one());
    for n in 1..=order as u64 {
        coeffs.push(Rational::from_integer(divisor_sigma(weight - 1, n) * factor));
    }
    Ok(TruncatedSeries::new(0, coeffs))
}

/// `Delta = (E4^3 - E6^2) / 1728` through `q^order`.
pub fn delta_qexp(order: i64) -> Result<TruncatedSeries> {
    let e4 = eisenstein_qexp(4, order)?;
    let e6 = eisenstein_qexp(6, order)?;
    let num = e4.pow(3)?.sub(&e6.pow(2)?);
    Ok(num.scale(&Rational::new(1, 1728)))
}

/// `1/Delta` through `q^order` (valuation -1).
pub fn inverse_delta_qexp(order: i64) -> Result<TruncatedSeries> {
    if order < -1 {
        return Err(Error::InvalidOrder { order, min: -1 });
    }
    Ok(delta_qexp(order + 2)?.invert()?.truncate(order))
}

/// `j = E4^3 / Delta` through `q^order`.
pub fn j_qexp(order: i64) -> Result<TruncatedSeries> {
    if order < -1 {
        return Err(Error::InvalidOrder { order, min: -1 });
    }
    let e4 = eisenstein_qexp(4, order + 1)?;
    let inv = inverse_delta_qexp(order)?;
    Ok(e4.pow(3)?.mul(&inv).truncate(order))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint {
    re: f64,
    im: f64,
}

impl HalfPlanePoint {
    pub fn new(re: f64, im: f64) -> Result<HalfPlanePoint> {
        if im > 0.0 && re.is_finite() && im.is_finite() {
            Ok(HalfPlanePoint { re, im })
        } else {
            Err(Error::Domain(format!("{re} + {im}i is not in the upper half-plane")))
        }
    }

    pub fn from_complex(z: Complex64) -> Result<HalfPlanePoint> {
        HalfPlanePoint::new(z.re, z.im)
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// `exp(2 pi i tau)`.
    pub fn nome(self) -> Complex64 {
        (Complex64::new(0.0, 2.0 * PI) * self.to_complex()).exp()
    }
}

fn require_numeric_domain(tau: HalfPlanePoint) -> Result<()> {
    if tau.im < MIN_IMAG {
        return Err(Error::Domain(format!(
            "Im(tau) = {} is below {MIN_IMAG}; reduce to the fundamental domain first",
            tau.im
        )));
    }
    Ok(())
}

fn j_coefficients_f64() -> &'static [f64] {
    static CACHE: OnceLock<Vec<f64>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let j = j_qexp(NUMERIC_TERMS as i64 - 2).expect("fixed order is valid");
        j.coefficients().iter().map(Rational::to_f64).collect()
    })
}

fn sigma1_f64() -> &'static [f64] {
    static CACHE: OnceLock<Vec<f64>> = OnceLock::new();
    CACHE.get_or_init(|| {
        (1..NUMERIC_TERMS as u64)
            .map(|n| Rational::from_integer(divisor_sigma(1, n)).to_f64())
            .collect()
    })
}

/// `j(tau)` from the first 40 terms of its q-expansion.
pub fn j_numeric(tau: HalfPlanePoint) -> Result<Complex64> {
    require_numeric_domain(tau)?;
    let q = tau.nome();
    let mut sum = Complex64::zero();
    // Horner over q^-1 .. q^38, then divide out the pole
    for &c in j_coefficients_f64().iter().rev() {
        sum = sum * q + c;
    }
    Ok(sum / q)
}

/// `E2(tau)` from its q-expansion.
pub fn e2_numeric(tau: HalfPlanePoint) -> Result<Complex64> {
    require_numeric_domain(tau)?;
    let q = tau.nome();
    let mut sum = Complex64::zero();
    for &s in sigma1_f64().iter().rev() {
        sum = (sum + s) * q;
    }
    Ok(Complex64::one() - 24.0 * sum)
}

/// Nearly holomorphic completion `E2(tau) - 3 / (pi Im tau)`.
pub fn e2_star_numeric(tau: HalfPlanePoint) -> Result<Complex64> {
    Ok(e2_numeric(tau)? - 3.0 / (PI * tau.im))
}

/// Evaluates `E4` or `E6` from its q-expansion.
pub fn eisenstein_numeric(weight: u32, tau: HalfPlanePoint) -> Result<Complex64> {
    require_numeric_domain(tau)?;
    let series = eisenstein_qexp(weight, NUMERIC_TERMS as i64 - 1)?;
    let q = tau.nome();
    let mut sum = Complex64::zero();
    for c in series.coefficients().iter().rev() {
        sum = sum * q + c.to_f64();
    }
    Ok(sum)
}

/// Chowla-Selberg period of the point:
/// `(6 pi)^(-1/2) (Gamma(1/3) / Gamma(2/3))^(3/2)` (hexagonal) or
/// `(8 pi)^(-1/2) Gamma(1/4) / Gamma(3/4)` (square).
pub fn omega(kind: PointKind) -> f64 {
    match kind {
        PointKind::Hexagonal => {
            (gamma(1.0 / 3.0) / gamma(2.0 / 3.0)).powf(1.5) / (6.0 * PI).sqrt()
        }
        PointKind::Square => gamma(0.25) / gamma(0.75) / (8.0 * PI).sqrt(),
    }
}

/// `2 pi Omega^2`, the factor between the Cayley map and its rescaling.
pub fn rescale_factor(kind: PointKind) -> f64 {
    2.0 * PI * omega(kind).powi(2)
}

/// Weight-2 unit `Omega^2 / (2 Im tau*)` in which CM values become rational.
pub fn weight_two_unit(kind: PointKind) -> f64 {
    omega(kind).powi(2) / (2.0 * kind.im_tau_star())
}

/// The Cayley map `S(tau) = (tau - tau*) / (tau - conj(tau*))` onto the unit
/// disk, optionally rescaled by `2 pi Omega^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Uniformizer {
    pub kind: PointKind,
    pub scaled: bool,
}

impl Uniformizer {
    pub fn cayley(kind: PointKind) -> Uniformizer {
        Uniformizer { kind, scaled: false }
    }

    pub fn rescaled(kind: PointKind) -> Uniformizer {
        Uniformizer { kind, scaled: true }
    }

    fn factor(&self) -> f64 {
        if self.scaled {
            rescale_factor(self.kind)
        } else {
            1.0
        }
    }

    pub fn forward(&self, tau: Complex64) -> Result<Complex64> {
        if tau.im.is_nan() || tau.im <= 0.0 {
            return Err(Error::Domain(format!("{tau} is not in the upper half-plane")));
        }
        let ts = self.kind.tau_star();
        Ok(self.factor() * (tau - ts) / (tau - ts.conj()))
    }

    pub fn inverse(&self, w: Complex64) -> Result<Complex64> {
        let w = w / self.factor();
        if (w - 1.0).norm() == 0.0 {
            return Err(Error::Pole("inverse uniformizer has a pole at w = 1".into()));
        }
        if w.norm() >= 1.0 {
            return Err(Error::Domain(format!("{w} is outside the unit disk")));
        }
        let ts = self.kind.tau_star();
        Ok((ts - ts.conj() * w) / (1.0 - w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_values() {
        assert_eq!(divisor_sigma(1, 6), BigInt::from(12));
        assert_eq!(divisor_sigma(3, 2), BigInt::from(9));
        assert_eq!(divisor_sigma(5, 1), BigInt::from(1));
        assert_eq!(divisor_sigma(1, 36), BigInt::from(91));
    }

    #[test]
    fn sigma_matches_brute_force() {
        for n in 1..200u64 {
            let brute: u64 = (1..=n).filter(|d| n % d == 0).sum();
            assert_eq!(divisor_sigma(1, n), BigInt::from(brute));
        }
    }

    #[test]
    fn eisenstein_coefficients() {
        let e4 = eisenstein_qexp(4, 3).unwrap();
        let e6 = eisenstein_qexp(6, 3).unwrap();
        let e2 = eisenstein_qexp(2, 3).unwrap();
        assert_eq!(e4.coeff(1), Some(Rational::from(240)));
        assert_eq!(e6.coeff(2), Some(Rational::from(-16632)));
        for e in [&e2, &e4, &e6] {
            assert_eq!(e.coeff(0), Some(Rational::one()));
        }
        assert!(eisenstein_qexp(8, 3).is_err());
    }

    #[test]
    fn delta_leading_terms() {
        let d = delta_qexp(5).unwrap();
        assert_eq!(d.valuation(), 1);
        let want = [1, -24, 252, -1472, 4830];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(d.coeff(k as i64 + 1), Some(Rational::from(*w as i64)));
        }
        assert!(d.is_integral());
    }

    #[test]
    fn j_leading_terms() {
        let j = j_qexp(3).unwrap();
        assert_eq!(j.valuation(), -1);
        assert_eq!(j.truncation(), 3);
        assert_eq!(j.coeff(-1), Some(Rational::from(1)));
        assert_eq!(j.coeff(0), Some(Rational::from(744)));
        assert_eq!(j.coeff(1), Some(Rational::from(196884)));
        assert_eq!(j.coeff(2), Some(Rational::from(21493760)));
        assert_eq!(j.coeff(3), Some(Rational::from(864299970)));
    }

    #[test]
    fn j_at_cm_points() {
        let i = HalfPlanePoint::new(0.0, 1.0).unwrap();
        let v = j_numeric(i).unwrap();
        assert!((v.re - 1728.0).abs() / 1728.0 < 1e-9 && v.im.abs() < 1e-9);
        let rho = HalfPlanePoint::from_complex(PointKind::Hexagonal.tau_star()).unwrap();
        assert!(j_numeric(rho).unwrap().norm() < 1e-6);
    }

    #[test]
    fn j_at_two_i() {
        // j(2i) = 66^3
        let v = j_numeric(HalfPlanePoint::new(0.0, 2.0).unwrap()).unwrap();
        assert!((v.re - 287496.0).abs() / 287496.0 < 1e-8);
    }

    #[test]
    fn numeric_domain_guard() {
        let low = HalfPlanePoint::new(0.1, 0.3).unwrap();
        assert!(matches!(j_numeric(low), Err(Error::Domain(_))));
        assert!(HalfPlanePoint::new(0.0, -1.0).is_err());
    }

    #[test]
    fn e2_star_vanishes_at_cm_points() {
        for kind in PointKind::ALL {
            let tau = HalfPlanePoint::from_complex(kind.tau_star()).unwrap();
            assert!(e2_star_numeric(tau).unwrap().norm() < 1e-8, "{kind}");
        }
    }

    #[test]
    fn omega_values() {
        assert!((omega(PointKind::Hexagonal) - 0.640_927_380_219_688_7).abs() < 1e-12);
        assert!((omega(PointKind::Square) - 0.590_170_299_508_048_1).abs() < 1e-12);
    }

    #[test]
    fn uniformizer_basics() {
        for kind in PointKind::ALL {
            for u in [Uniformizer::cayley(kind), Uniformizer::rescaled(kind)] {
                let ts = kind.tau_star();
                assert!(u.forward(ts).unwrap().norm() < 1e-15);
                assert!((u.inverse(Complex64::zero()).unwrap() - ts).norm() < 1e-15);
            }
        }
        let s = Uniformizer::cayley(PointKind::Square);
        assert!(matches!(s.inverse(Complex64::one()), Err(Error::Pole(_))));
        assert!(s.forward(Complex64::new(0.0, -1.0)).is_err());
    }
}
