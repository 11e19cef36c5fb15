//! Hypergeometric-type series `g`, `h` for the Fermat cubic and the elliptic
//! quartic, and the coordinate `u = h / g`.
//!
//! Cubic:
//! ```text
//! g = sum (-1)^n ((3n-2)!!!)^3 / (3n)!   t^(3n)
//! h = sum (-1)^n ((3n-1)!!!)^3 / (3n+1)! t^(3n+1)
//! ```
//! Quartic:
//! ```text
//! g = sum ((4n-3)!!!!)^2 / (2n)!   t^(2n)
//! h = sum ((4n-1)!!!!)^2 / (2n+1)! t^(2n+1)
//! ```

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Cubic,
    Quartic,
}

impl CurveKind {
    pub fn factorial_step(self) -> u32 {
        match self {
            CurveKind::Cubic => 3,
            CurveKind::Quartic => 4,
        }
    }

    pub fn sign_alternates(self) -> bool {
        matches!(self, CurveKind::Cubic)
    }

    /// Power the multifactorial is raised to.
    fn multifactorial_power(self) -> u32 {
        match self {
            CurveKind::Cubic => 3,
            CurveKind::Quartic => 2,
        }
    }

    /// Spacing between consecutive exponents of `g` (and of `h`).
    fn degree_step(self) -> i64 {
        match self {
            CurveKind::Cubic => 3,
            CurveKind::Quartic => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CurveKind::Cubic => "cubic",
            CurveKind::Quartic => "quartic",
        }
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CurveKind {
    type Err = Error;

    fn from_str(s: &str) -> std::result::Result<Self, Error> {
        match s {
            "cubic" => Ok(CurveKind::Cubic),
            "quartic" => Ok(CurveKind::Quartic),
            _ => Err(Error::Parse(format!("unknown curve kind {s:?}"))),
        }
    }
}

/// `m (m - step) (m - 2 step) ...` over the positive factors; 1 when `m <= 0`.
pub fn multifactorial(m: i64, step: u32) -> BigInt {
    assert!(step > 0, "multifactorial step must be positive");
    let mut acc = BigInt::one();
    let mut k = m;
    while k > 0 {
        acc *= k;
        k -= step as i64;
    }
    acc
}

fn factorial(n: i64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Which of the two series.
#[derive(Clone, Copy)]
enum Part {
    G,
    H,
}

fn build(kind: CurveKind, part: Part, order: i64) -> TruncatedSeries {
    let step = kind.factorial_step() as i64;
    let dstep = kind.degree_step();
    let offset = match part {
        Part::G => 0,
        Part::H => 1,
    };
    let mut coeffs = vec![Rational::zero(); (order.max(0) + 1) as usize];
    let mut n = 0i64;
    loop {
        let degree = dstep * n + offset;
        if degree > order {
            break;
        }
        // g uses (step n - step + 1)!..., h uses (step n - 1)!...
        let m = match part {
            Part::G => step * n - (step - 1),
            Part::H => step * n - 1,
        };
        let top = num_traits::pow(multifactorial(m, kind.factorial_step()), kind.multifactorial_power() as usize);
        let mut c = Rational::new(top, factorial(degree));
        if kind.sign_alternates() && n % 2 == 1 {
            c = -c;
        }
        coeffs[degree as usize] = c;
        n += 1;
    }
    TruncatedSeries::new(0, coeffs)
}

/// `g(t)` exact through `t^order`.
pub fn g_series(kind: CurveKind, order: i64) -> TruncatedSeries {
    build(kind, Part::G, order)
}

/// `h(t)` exact through `t^order`.
pub fn h_series(kind: CurveKind, order: i64) -> TruncatedSeries {
    build(kind, Part::H, order)
}

/// `u = h / g` exact through `t^order`.
pub fn flat_ratio(kind: CurveKind, order: i64) -> Result<TruncatedSeries> {
    if order < 1 {
        return Err(Error::InvalidOrder { order, min: 1 });
    }
    h_series(kind, order).div(&g_series(kind, order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn multifactorial_values() {
        assert_eq!(multifactorial(5, 3), BigInt::from(10));
        assert_eq!(multifactorial(-2, 3), BigInt::from(1));
        assert_eq!(multifactorial(0, 4), BigInt::from(1));
        assert_eq!(multifactorial(7, 4), BigInt::from(21));
        assert_eq!(multifactorial(4, 3), BigInt::from(4));
    }

    #[test]
    fn multifactorial_recursion() {
        for step in [3u32, 4] {
            for m in 1..=100i64 {
                assert_eq!(multifactorial(m, step), m * multifactorial(m - step as i64, step));
            }
        }
    }

    #[test]
    fn cubic_g_and_h() {
        let g = g_series(CurveKind::Cubic, 6);
        assert_eq!(g.coeff(0), Some(r(1, 1)));
        assert_eq!(g.coeff(3), Some(r(-1, 6)));
        // (4!!!)^3 / 6! = 64 / 720
        assert_eq!(g.coeff(6), Some(r(4, 45)));
        let h = h_series(CurveKind::Cubic, 4);
        assert_eq!(h.coeff(1), Some(r(1, 1)));
        assert_eq!(h.coeff(4), Some(r(-1, 3)));
    }

    #[test]
    fn quartic_g_and_h() {
        let g = g_series(CurveKind::Quartic, 2);
        assert_eq!(g.coeff(2), Some(r(1, 2)));
        let h = h_series(CurveKind::Quartic, 3);
        assert_eq!(h.coeff(3), Some(r(3, 2)));
        // (5!!!!)^2 / 4! = 25 / 24
        assert_eq!(g_series(CurveKind::Quartic, 4).coeff(4), Some(r(25, 24)));
    }

    #[test]
    fn ratio_leading_terms() {
        let u = flat_ratio(CurveKind::Cubic, 4).unwrap();
        assert_eq!(u.coeff(0), Some(Rational::zero()));
        assert_eq!(u.coeff(1), Some(r(1, 1)));
        assert_eq!(u.coeff(4), Some(r(-1, 6)));
        assert_eq!(u.truncation(), 4);
        let u = flat_ratio(CurveKind::Quartic, 5).unwrap();
        assert_eq!(u.coeff(1), Some(r(1, 1)));
        assert_eq!(u.coeff(3), Some(r(1, 1)));
    }

    #[test]
    fn ratio_support_pattern() {
        let u = flat_ratio(CurveKind::Cubic, 40).unwrap();
        assert!(u.nonzero_terms().all(|(n, _)| n % 3 == 1));
        let u = flat_ratio(CurveKind::Quartic, 40).unwrap();
        assert!(u.nonzero_terms().all(|(n, _)| n % 2 == 1));
    }

    #[test]
    fn ratio_needs_positive_order() {
        assert!(matches!(flat_ratio(CurveKind::Cubic, 0), Err(Error::InvalidOrder { .. })));
    }
}
