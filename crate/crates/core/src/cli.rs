//! Command-line front end: `verify`, `expand` and `selftest`.
//!
//! Exit codes: 0 verified/pass, 1 mismatch or suite failure, 2 usage or
//! internal error.

use std::fmt::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::closed_form::conjecture_rhs;
use crate::elliptic::elliptic_j_series;
use crate::emit::{emit_series, short_value, Format};
use crate::error::{Error, Result};
use crate::flat::{flat_ratio, CurveKind};
use crate::numerics::j_qexp;
use crate::point::PointKind;
use crate::rational::Rational;
use crate::selftest::run_selftest;
use crate::verify::{composed_series, run_verify_with, FaultInjection, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lg-moonshine", version, about = "Exact checks of j-function elliptic expansions at j = 0 and j = 1728")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare j(s^-1(h/g)) with the closed form, degree by degree.
    Verify {
        #[arg(long, value_enum, default_value_t = PointArg::Both)]
        point: PointArg,
        #[arg(long, default_value_t = 24)]
        order: i64,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
        /// Adds 1 to the elliptic coefficient of this degree (fault injection).
        #[arg(long, hide = true)]
        perturb_elliptic: Option<i64>,
    },
    /// Print the coefficients of one series.
    Expand {
        #[arg(long, value_enum)]
        series: SeriesArg,
        #[arg(long, value_enum, conflicts_with = "kind")]
        point: Option<SinglePointArg>,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        #[arg(long, default_value_t = 24)]
        order: i64,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
    /// Run every invariant suite.
    Selftest {
        #[arg(long, value_enum, hide = true)]
        fault: Vec<FaultArg>,
        #[arg(long, hide = true)]
        perturb_elliptic: Option<i64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PointArg {
    Hexagonal,
    Square,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SinglePointArg {
    Hexagonal,
    Square,
}

impl From<SinglePointArg> for PointKind {
    fn from(p: SinglePointArg) -> Self {
        match p {
            SinglePointArg::Hexagonal => PointKind::Hexagonal,
            SinglePointArg::Square => PointKind::Square,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Cubic,
    Quartic,
}

impl From<KindArg> for CurveKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Cubic => CurveKind::Cubic,
            KindArg::Quartic => CurveKind::Quartic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Table,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Table => Format::Table,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesArg {
    Elliptic,
    Flat,
    Closed,
    Composed,
    #[value(name = "j-qexp")]
    JQexp,
}

/// Fault-injection hooks for `selftest`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    /// Scale the derivation rule of E2* by 3/4.
    RuleA,
    /// Scale the derivation rule of E4 by 3/4, i.e. (ab - c)/4.
    RuleB,
    RuleC,
    RuleD,
    /// Add 1 to a normalized CM value at both points.
    HatA,
    HatB,
    HatC,
    HatD,
}

impl FaultArg {
    fn apply(self, faults: FaultInjection) -> Result<FaultInjection> {
        let three_quarters = Rational::new(3, 4);
        Ok(match self {
            FaultArg::RuleA => faults.with_scaled_rule(0, three_quarters),
            FaultArg::RuleB => faults.with_scaled_rule(1, three_quarters),
            FaultArg::RuleC => faults.with_scaled_rule(2, three_quarters),
            FaultArg::RuleD => faults.with_scaled_rule(3, three_quarters),
            FaultArg::HatA | FaultArg::HatB | FaultArg::HatC | FaultArg::HatD => {
                let idx = self as usize - FaultArg::HatA as usize;
                let mut f = faults;
                for point in PointKind::ALL {
                    let spec = f.point_spec(point)?;
                    f = f.with_hat(point, idx, &spec.hat_values[idx] + Rational::one());
                }
                f
            }
        })
    }
}

/// Everything a run produced; the binary only prints it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl CliOutput {
    fn ok(stdout: String, code: i32) -> CliOutput {
        CliOutput { stdout, stderr: String::new(), code }
    }

    fn error(e: &Error) -> CliOutput {
        CliOutput { stdout: String::new(), stderr: format!("error: {e}\n"), code: EXIT_USAGE }
    }
}

pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput::ok(text, 0)
            } else {
                CliOutput { stdout: String::new(), stderr: text, code: EXIT_USAGE }
            };
        }
    };
    let result = match cli.command {
        Command::Verify { point, order, format, perturb_elliptic } => {
            cmd_verify(point, order, format.into(), perturb_elliptic)
        }
        Command::Expand { series, point, kind, order, format } => {
            cmd_expand(series, point.map(Into::into), kind.map(Into::into), order, format.into())
        }
        Command::Selftest { fault, perturb_elliptic } => cmd_selftest(&fault, perturb_elliptic),
    };
    result.unwrap_or_else(|e| CliOutput::error(&e))
}

fn selected_points(point: PointArg) -> Vec<PointKind> {
    match point {
        PointArg::Hexagonal => vec![PointKind::Hexagonal],
        PointArg::Square => vec![PointKind::Square],
        PointArg::Both => PointKind::ALL.to_vec(),
    }
}

fn elliptic_offsets(faults: FaultInjection, degree: Option<i64>) -> FaultInjection {
    match degree {
        None => faults,
        Some(d) => PointKind::ALL
            .iter()
            .fold(faults, |f, &p| f.with_elliptic_offset(p, d, Rational::one())),
    }
}

fn cmd_verify(point: PointArg, order: i64, format: Format, perturb: Option<i64>) -> Result<CliOutput> {
    let faults = elliptic_offsets(FaultInjection::none(), perturb);
    let reports = selected_points(point)
        .into_iter()
        .map(|p| run_verify_with(p, order, &faults))
        .collect::<Result<Vec<_>>>()?;
    let code = if reports.iter().all(|r| r.verified) { EXIT_OK } else { EXIT_FAIL };
    let stdout = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&reports).expect("reports always serialize");
            s.push('\n');
            s
        }
        Format::Csv => verify_csv(&reports, order)?,
        Format::Table => verify_table(&reports),
    };
    Ok(CliOutput::ok(stdout, code))
}

fn verify_csv(reports: &[VerificationReport], order: i64) -> Result<String> {
    let mut out = String::from("point,degree,composed,closed_form,match\n");
    for rep in reports {
        let rhs = conjecture_rhs(rep.point, order)?;
        for &deg in &rep.checked_degrees {
            let lhs = rep
                .composed
                .iter()
                .find(|t| t.degree == deg)
                .map(|t| t.value.clone())
                .unwrap_or_else(Rational::zero);
            let r = rhs.coeff(deg).expect("closed form covers every checked degree");
            if lhs.is_zero() && r.is_zero() {
                continue;
            }
            writeln!(out, "{},{deg},{lhs},{r},{}", rep.point, lhs == r).unwrap();
        }
    }
    Ok(out)
}

fn verify_table(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for rep in reports {
        let status = if rep.verified { "verified" } else { "MISMATCH" };
        writeln!(out, "{} point, order {}: {status} ({} ms)", rep.point, rep.order, rep.elapsed_ms).unwrap();
        writeln!(out, "  closed form: {}", rep.closed_form).unwrap();
        writeln!(out, "  integral coefficients: {}", if rep.integrality_ok { "yes" } else { "no" }).unwrap();
        if let Some(m) = &rep.first_mismatch {
            writeln!(out, "  first mismatch at t^{}: composed {} vs closed form {}", m.degree, m.lhs, m.rhs).unwrap();
        }
        let width = rep.composed.iter().map(|t| format!("t^{}", t.degree).len()).max().unwrap_or(0);
        for t in &rep.composed {
            let label = format!("t^{}", t.degree);
            writeln!(out, "  {label:>width$}: {}", short_value(&t.value)).unwrap();
        }
    }
    out
}

fn cmd_expand(
    series: SeriesArg,
    point: Option<PointKind>,
    kind: Option<CurveKind>,
    order: i64,
    format: Format,
) -> Result<CliOutput> {
    let need_point = || -> Result<PointKind> {
        point
            .or_else(|| {
                kind.map(|k| match k {
                    CurveKind::Cubic => PointKind::Hexagonal,
                    CurveKind::Quartic => PointKind::Square,
                })
            })
            .ok_or_else(|| Error::Parse("this series needs --point or --kind".into()))
    };
    let (s, var) = match series {
        SeriesArg::Elliptic => (elliptic_j_series(need_point()?, order)?, "w"),
        SeriesArg::Flat => {
            let k = match kind {
                Some(k) => k,
                None => need_point()?.curve(),
            };
            (flat_ratio(k, order)?, "t")
        }
        SeriesArg::Closed => (conjecture_rhs(need_point()?, order)?, "t"),
        SeriesArg::Composed => {
            let p = need_point()?;
            if order < p.min_order() {
                return Err(Error::InvalidOrder { order, min: p.min_order() });
            }
            (composed_series(p, order, &FaultInjection::none())?, "t")
        }
        SeriesArg::JQexp => (j_qexp(order)?, "q"),
    };
    Ok(CliOutput::ok(emit_series(&s, var, format), EXIT_OK))
}

fn cmd_selftest(faults: &[FaultArg], perturb: Option<i64>) -> Result<CliOutput> {
    let mut injection = FaultInjection::none();
    for f in faults {
        injection = f.apply(injection)?;
    }
    let injection = elliptic_offsets(injection, perturb);
    let results = run_selftest(&injection);
    let mut out = String::new();
    for r in &results {
        writeln!(out, "{}", r.line()).unwrap();
    }
    let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.name).collect();
    if failed.is_empty() {
        writeln!(out, "all {} suites passed", results.len()).unwrap();
        Ok(CliOutput::ok(out, EXIT_OK))
    } else {
        writeln!(out, "failed suites: {}", failed.join(", ")).unwrap();
        Ok(CliOutput::ok(out, EXIT_FAIL))
    }
}
