//! Coefficient table output.

use std::fmt::Write;
use std::str::FromStr;

use crate::error::Error;
use crate::rational::Rational;
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

/// Integers print bare, everything else as `num/den`.
pub fn short_value(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        r.to_string()
    }
}

/// `degree,numerator,denominator`, one row per nonzero coefficient.
pub fn series_csv(series: &TruncatedSeries) -> String {
    let mut out = String::from("degree,numerator,denominator\n");
    for (n, c) in series.nonzero_terms() {
        writeln!(out, "{n},{},{}", c.numer(), c.denom()).unwrap();
    }
    out
}

pub fn series_json(series: &TruncatedSeries) -> String {
    series.to_json()
}

/// Right-aligned `var^n: value` lines for the nonzero coefficients, closed by
/// the truncation order.
pub fn series_table(series: &TruncatedSeries, var: &str) -> String {
    let rows: Vec<(String, String)> = series
        .nonzero_terms()
        .map(|(n, c)| (format!("{var}^{n}"), short_value(c)))
        .collect();
    let width = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (label, value) in &rows {
        writeln!(out, "{label:>width$}: {value}").unwrap();
    }
    writeln!(out, "O({var}^{})", series.truncation() + 1).unwrap();
    out
}

pub fn emit_series(series: &TruncatedSeries, var: &str, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = series_json(series);
            s.push('\n');
            s
        }
        Format::Csv => series_csv(series),
        Format::Table => series_table(series, var),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_skips_zeros() {
        let s = TruncatedSeries::new(0, vec![Rational::zero(), Rational::one(), Rational::zero(), Rational::new(-1, 6)]);
        assert_eq!(series_csv(&s), "degree,numerator,denominator\n1,1,1\n3,-1,6\n");
    }

    #[test]
    fn table_alignment() {
        let s = TruncatedSeries::new(-1, vec![Rational::one(), Rational::from(744), Rational::from(196884)]);
        let t = series_table(&s, "q");
        assert_eq!(t, "q^-1: 1\n q^0: 744\n q^1: 196884\nO(q^2)\n");
    }
}
