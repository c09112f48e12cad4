//! The annual GDP CSV format: header `year,gdp_trillion_2005usd`, one row
//! per year, `.` decimals, no thousands separators.

use std::path::Path;

use growthcast_core::AnnualSeries;

pub const HEADER: &str = "year,gdp_trillion_2005usd";

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("header must be exactly `{HEADER}`, found `{0}`")]
    Header(String),
    #[error("line {line}: {reason}")]
    Row { line: u64, reason: String },
    #[error("{0}")]
    Series(#[from] growthcast_core::Error),
}

/// Parses and validates an annual series; rows may come in any order.
pub fn parse_annual_series(text: &str) -> Result<AnnualSeries, InputError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let first = text.lines().next().unwrap_or("");
    if first.trim_end_matches('\r') != HEADER {
        return Err(InputError::Header(first.trim_end_matches('\r').to_owned()));
    }
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let mut points = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| InputError::Row {
            line: e.position().map_or(0, |p| p.line()),
            reason: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let bad = |reason: String| InputError::Row { line, reason };
        if record.len() != 2 {
            return Err(bad(format!("expected 2 fields, found {}", record.len())));
        }
        let year: i32 = record[0]
            .trim()
            .parse()
            .map_err(|_| bad(format!("year `{}` is not an integer", &record[0])))?;
        let gdp: f64 = record[1]
            .trim()
            .parse()
            .map_err(|_| bad(format!("GDP `{}` is not a number", &record[1])))?;
        points.push((year, gdp));
    }
    Ok(AnnualSeries::new(points)?)
}

pub fn read_annual_series(path: &Path) -> Result<AnnualSeries, crate::CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| crate::CliError::Read {
        path: path.to_owned(),
        source,
    })?;
    Ok(parse_annual_series(&text)?)
}

/// CSV text in the input format, with shortest round-trip numbers.
pub fn serialize_annual_series(series: &AnnualSeries) -> String {
    let mut out = String::with_capacity(32 * (series.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for &(year, gdp) in series.points() {
        out.push_str(&format!("{year},{}\n", crate::report::num(gdp)));
    }
    out
}
