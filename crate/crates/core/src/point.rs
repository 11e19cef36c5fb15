//! The two expansion points and the data that depends only on which one is chosen.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::flat::CurveKind;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    /// `tau* = exp(pi i / 3)`, where `j = 0`.
    Hexagonal,
    /// `tau* = i`, where `j = 1728`.
    Square,
}

impl PointKind {
    pub const ALL: [PointKind; 2] = [PointKind::Hexagonal, PointKind::Square];

    pub fn name(self) -> &'static str {
        match self {
            PointKind::Hexagonal => "hexagonal",
            PointKind::Square => "square",
        }
    }

    pub fn tau_star(self) -> Complex64 {
        match self {
            PointKind::Hexagonal => Complex64::from_polar(1.0, PI / 3.0),
            PointKind::Square => Complex64::i(),
        }
    }

    pub fn im_tau_star(self) -> f64 {
        match self {
            PointKind::Hexagonal => 3f64.sqrt() / 2.0,
            PointKind::Square => 1.0,
        }
    }

    /// `Im tau*` as an exact algebraic expression.
    pub fn im_tau_star_exact(self) -> &'static str {
        match self {
            PointKind::Hexagonal => "sqrt(3)/2",
            PointKind::Square => "1",
        }
    }

    /// The elliptic expansion only has terms in degrees divisible by this.
    pub fn vanishing_modulus(self) -> i64 {
        match self {
            PointKind::Hexagonal => 3,
            PointKind::Square => 2,
        }
    }

    /// Degree of the first nonconstant elliptic coefficient, used to fix the
    /// normalization.
    pub fn calibration_degree(self) -> usize {
        match self {
            PointKind::Hexagonal => 3,
            PointKind::Square => 2,
        }
    }

    pub fn calibration_value(self) -> Rational {
        match self {
            PointKind::Hexagonal => Rational::from(13824),
            PointKind::Square => Rational::from(20736),
        }
    }

    /// Value of `j` at the point.
    pub fn j_value(self) -> Rational {
        match self {
            PointKind::Hexagonal => Rational::zero(),
            PointKind::Square => Rational::from(1728),
        }
    }

    /// Curve family whose flat coordinate is substituted at this point.
    pub fn curve(self) -> CurveKind {
        match self {
            PointKind::Hexagonal => CurveKind::Cubic,
            PointKind::Square => CurveKind::Quartic,
        }
    }

    /// Smallest order at which the conjecture has nontrivial content.
    pub fn min_order(self) -> i64 {
        self.calibration_degree() as i64
    }
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PointKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "hexagonal" | "hex" => Ok(PointKind::Hexagonal),
            "square" | "sq" => Ok(PointKind::Square),
            _ => Err(Error::Parse(format!("unknown point {s:?}"))),
        }
    }
}
