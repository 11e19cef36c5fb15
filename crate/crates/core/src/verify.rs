//! Both sides of the conjecture and their exact comparison.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::closed_form::{conjecture_rhs, ClosedFormTarget};
use crate::elliptic::{calibrate_with, derivative_tower, expansion_from_tower, CMPointSpec};
use crate::error::{Error, Result};
use crate::flat::flat_ratio;
use crate::point::PointKind;
use crate::quasimodular::DerivationRules;
use crate::rational::Rational;
use crate::series::{Mismatch, SeriesTerm, TruncatedSeries};

/// Deliberate corruptions of the pipeline, used to check that the suites
/// notice them. The default injects nothing.
#[derive(Debug, Clone, Default)]
pub struct FaultInjection {
    pub rules: Option<DerivationRules>,
    /// `(point, generator index, value)` overriding a calibrated hat value.
    pub hat_overrides: Vec<(PointKind, usize, Rational)>,
    /// `(point, degree, offset)` added to an elliptic coefficient.
    pub elliptic_offsets: Vec<(PointKind, i64, Rational)>,
}

impl FaultInjection {
    pub fn none() -> FaultInjection {
        FaultInjection::default()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_none() && self.hat_overrides.is_empty() && self.elliptic_offsets.is_empty()
    }

    pub fn rules(&self) -> DerivationRules {
        self.rules.clone().unwrap_or_default()
    }

    /// Multiplies the image of one generator by `factor`.
    pub fn with_scaled_rule(mut self, generator: usize, factor: Rational) -> FaultInjection {
        let mut rules = self.rules();
        rules.images[generator] = rules.images[generator].scale(&factor);
        self.rules = Some(rules);
        self
    }

    pub fn with_hat(mut self, point: PointKind, generator: usize, value: Rational) -> FaultInjection {
        self.hat_overrides.push((point, generator, value));
        self
    }

    pub fn with_elliptic_offset(mut self, point: PointKind, degree: i64, offset: Rational) -> FaultInjection {
        self.elliptic_offsets.push((point, degree, offset));
        self
    }

    /// Calibrated point data with overrides applied.
    pub fn point_spec(&self, point: PointKind) -> Result<CMPointSpec> {
        let mut spec = calibrate_with(point, &self.rules())?;
        for (p, i, v) in &self.hat_overrides {
            if *p == point {
                spec.hat_values[*i] = v.clone();
            }
        }
        Ok(spec)
    }

    /// Elliptic expansion through `w^order` with all injected faults.
    pub fn elliptic_series(&self, point: PointKind, order: i64) -> Result<TruncatedSeries> {
        if order < 0 {
            return Err(Error::InvalidOrder { order, min: 0 });
        }
        let spec = self.point_spec(point)?;
        let tower = derivative_tower(&self.rules(), order as usize);
        let mut series = expansion_from_tower(&spec, &tower, order);
        for (p, degree, offset) in &self.elliptic_offsets {
            if *p == point && *degree <= order {
                let c = series.coeff(*degree).expect("degree within order");
                series = series.with_coeff(*degree, c + offset)?;
            }
        }
        Ok(series)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub point: PointKind,
    pub order: i64,
    pub verified: bool,
    pub first_mismatch: Option<Mismatch>,
    pub integrality_ok: bool,
    pub checked_degrees: Vec<i64>,
    pub elapsed_ms: u64,
    pub closed_form: String,
    /// Nonzero coefficients of the composed side.
    pub composed: Vec<SeriesTerm>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(s: &str) -> Result<VerificationReport> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// `j(s^-1(h/g))` through `t^order`.
pub fn composed_series(point: PointKind, order: i64, faults: &FaultInjection) -> Result<TruncatedSeries> {
    let outer = faults.elliptic_series(point, order)?;
    let inner = flat_ratio(point.curve(), order)?;
    outer.compose(&inner)
}

pub fn run_verify(point: PointKind, order: i64) -> Result<VerificationReport> {
    run_verify_with(point, order, &FaultInjection::none())
}

/// Builds both sides through `t^order` and compares them exactly. A
/// mismatch is reported, not raised.
pub fn run_verify_with(point: PointKind, order: i64, faults: &FaultInjection) -> Result<VerificationReport> {
    let min = point.min_order();
    if order < min {
        return Err(Error::InvalidOrder { order, min });
    }
    let start = Instant::now();
    let lhs = composed_series(point, order, faults)?;
    let rhs = conjecture_rhs(point, order)?;
    debug_assert!(lhs.truncation() >= order && rhs.truncation() >= order);
    let lhs = lhs.truncate(order);
    let rhs = rhs.truncate(order);
    let first_mismatch = lhs.first_mismatch(&rhs);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(VerificationReport {
        point,
        order,
        verified: first_mismatch.is_none(),
        first_mismatch,
        integrality_ok: lhs.is_integral(),
        checked_degrees: (0..=order).collect(),
        elapsed_ms,
        closed_form: ClosedFormTarget::new(point).description().to_string(),
        composed: lhs
            .nonzero_terms()
            .map(|(degree, value)| SeriesTerm { degree, value: value.clone() })
            .collect(),
    })
}
