//! Exact verification engine for the elliptic expansions of Klein's `j` at
//! the hexagonal (`j = 0`) and square (`j = 1728`) points.
//!
//! The pipeline is exact-rational end to end:
//!
//! 1. [`quasimodular`] iterates the Serre-type derivation on `j = E4^3/Delta`.
//! 2. [`elliptic`] evaluates the resulting polynomials at calibrated CM values,
//!    giving the Taylor coefficients of `j(s^-1(w))`.
//! 3. [`flat`] builds the coordinate `u = h/g` for the cubic or the quartic.
//! 4. [`verify`] composes `j(s^-1(u(t)))` and compares it, degree by degree,
//!    with the closed forms in [`closed_form`].
//!
//! [`numerics`] holds the independent oracles (q-expansions, floating-point
//! `j`, uniformizers, periods) used by the test suites in [`selftest`].

pub mod closed_form;
pub mod cli;
pub mod elliptic;
pub mod emit;
pub mod error;
pub mod flat;
pub mod numerics;
pub mod point;
pub mod quasimodular;
pub mod rational;
pub mod selftest;
pub mod series;
pub mod verify;

pub use closed_form::{conjecture_rhs, hesse_j, ClosedFormTarget};
pub use elliptic::{calibrate, elliptic_j_series, CMPointSpec};
pub use error::{Error, Result};
pub use flat::{flat_ratio, g_series, h_series, multifactorial, CurveKind};
pub use point::PointKind;
pub use quasimodular::{serre_derivative, DerivationRules, QMonomial, QPolynomial};
pub use rational::Rational;
pub use series::{Mismatch, SeriesTerm, TruncatedSeries};
pub use verify::{run_verify, FaultInjection, VerificationReport};
