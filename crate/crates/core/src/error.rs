use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-unit leading coefficient")]
    NonUnitLeading,

    #[error("composition requires positive valuation (inner series has valuation {0})")]
    CompositionValuation(i64),

    #[error("composition requires an outer series without poles (valuation {0})")]
    OuterPole(i64),

    #[error("mixed weight: {}", .0.join(", "))]
    MixedWeight(Vec<String>),

    #[error("weight of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("calibration failed: {0}")]
    CalibrationFailed(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("invalid order {order}: need at least {min}")]
    InvalidOrder { order: i64, min: i64 },

    #[error("outside domain: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),
}
