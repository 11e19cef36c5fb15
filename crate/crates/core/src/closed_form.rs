//! Closed-form right-hand sides and the Hesse-pencil `j`.
//!
//! Hexagonal: `27 t^3 ((8 - t^3) / (1 + t^3))^3`, the `j`-invariant of
//! `x^3 + y^3 + z^3 + 3 t xyz = 0`.
//!
//! Square: `F(t^2)` with `F(s) = (192 + 256 s) ((3 + 4 s) / (1 - 4 s))^2`.
//! Only even powers of `t` occur, matching the odd flat coordinate of the
//! quartic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::PointKind;
use crate::rational::Rational;
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormTarget {
    pub kind: PointKind,
}

impl ClosedFormTarget {
    pub fn new(kind: PointKind) -> ClosedFormTarget {
        ClosedFormTarget { kind }
    }

    pub fn description(&self) -> &'static str {
        match self.kind {
            PointKind::Hexagonal => "27t^3((8-t^3)/(1+t^3))^3",
            PointKind::Square => "(192+256t^2)((3+4t^2)/(1-4t^2))^2",
        }
    }

    pub fn expand(&self, order: i64) -> Result<TruncatedSeries> {
        conjecture_rhs(self.kind, order)
    }
}

/// Sparse integer polynomial `sum c_k t^(step k)`, exact through `order`.
fn sparse(coeffs: &[i64], step: usize, order: i64) -> TruncatedSeries {
    let mut dense = vec![0i64; (coeffs.len() - 1) * step + 1];
    for (k, &c) in coeffs.iter().enumerate() {
        dense[k * step] = c;
    }
    TruncatedSeries::from_int_poly(&dense, order)
}

/// Exact Taylor expansion of the closed form through `t^order`.
pub fn conjecture_rhs(kind: PointKind, order: i64) -> Result<TruncatedSeries> {
    if order < 0 {
        return Err(Error::InvalidOrder { order, min: 0 });
    }
    match kind {
        PointKind::Hexagonal => {
            let prefactor = sparse(&[0, 27], 3, order);
            let num = sparse(&[8, -1], 3, order).pow(3)?;
            let den = sparse(&[1, 1], 3, order).pow(-3)?;
            Ok(prefactor.mul(&num).mul(&den).truncate(order))
        }
        PointKind::Square => {
            let prefactor = sparse(&[192, 256], 2, order);
            let num = sparse(&[3, 4], 2, order).pow(2)?;
            let den = sparse(&[1, -4], 2, order).pow(-2)?;
            Ok(prefactor.mul(&num).mul(&den).truncate(order))
        }
    }
}

/// `j` of the Hesse cubic `x^3 + y^3 + z^3 + 3 t xyz = 0`.
pub fn hesse_j(t: &Rational) -> Result<Rational> {
    let t3 = t.pow(3);
    let den = Rational::one() + &t3;
    if den.is_zero() {
        return Err(Error::Pole(format!("t = {} gives a singular member of the pencil", crate::emit::short_value(t))));
    }
    let ratio = (Rational::from(8) - &t3) / den;
    Ok(Rational::from(27) * t3 * ratio.pow(3))
}
