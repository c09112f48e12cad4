//! Output formats: shortest round-trip numbers in every CSV and JSON file,
//! rounded figures only in the human-readable table.

use std::fmt::Write as _;

use growthcast_core::{
    asymptotic_rate, implicit_constant, GrowthModel, ProjectionRow, RateSeries, StressReference, Trajectory,
    TrajectoryKind,
};
use serde::Serialize;

use crate::pipeline::{FitOutcome, RateOptions};

/// Shortest representation that parses back to the same `f64`; empty for
/// non-finite values.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:?}")
    } else {
        String::new()
    }
}

/// Column label of a trajectory kind.
pub fn label(kind: TrajectoryKind) -> &'static str {
    match kind {
        TrajectoryKind::T1 => "T1",
        TrajectoryKind::T2 => "T2",
        TrajectoryKind::T3 => "T3",
        TrajectoryKind::AsymptoticExp => "asymptotic",
        TrajectoryKind::NumericSizeOde => "size",
    }
}

#[derive(Debug, Serialize)]
pub struct FitReport {
    pub model: &'static str,
    pub domain: &'static str,
    pub years: [i32; 2],
    pub a: f64,
    pub ln_b: Option<f64>,
    pub b: f64,
    pub r: Option<f64>,
    /// Closed-form constant; for the size model the constant of the
    /// implicit series solution.
    #[serde(rename = "C")]
    pub c: Option<f64>,
    #[serde(rename = "ln_C")]
    pub ln_c: Option<f64>,
    pub sse: f64,
    pub anchor: AnchorReport,
    pub rates: RatesReport,
    pub diagnostics: Option<Diagnostics>,
    pub features: Features,
}

#[derive(Debug, Serialize)]
pub struct AnchorReport {
    pub year: f64,
    pub gdp: f64,
}

#[derive(Debug, Serialize)]
pub struct RatesReport {
    pub method: &'static str,
    pub window: usize,
    pub degree: usize,
}

#[derive(Debug, Serialize)]
#[allow(non_snake_case)]
pub struct Diagnostics {
    pub lnF_slope: f64,
    pub lnF_sse: f64,
    pub feasible_a_floor: f64,
    pub linearized_sse: f64,
    pub degenerate: bool,
}

#[derive(Debug, Default, Serialize)]
pub struct Features {
    pub asymptotic_rate: Option<f64>,
    pub doubling_time: Option<f64>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub s_max: Option<f64>,
    pub s_limit: Option<f64>,
}

impl FitReport {
    pub fn new(fit: &FitOutcome, rates: RateOptions) -> Self {
        let traj = &fit.trajectory;
        let (t_ref, s_ref) = traj.reference();
        let mut features = Features::default();
        let (a, ln_b, b, r) = match fit.model {
            GrowthModel::TimeSaturation(p) | GrowthModel::SizeSaturation(p) => {
                if let Ok((rate, doubling)) = asymptotic_rate(p.a()) {
                    features.asymptotic_rate = Some(rate);
                    features.doubling_time = Some(doubling);
                }
                features.t_min = match fit.model {
                    GrowthModel::TimeSaturation(_) => p.lower_bound(),
                    _ => None,
                };
                (p.a(), Some(p.ln_b()), p.b(), Some(p.r()))
            }
            GrowthModel::LinearTime(p) | GrowthModel::LinearSize(p) => {
                if let Ok(f) = traj.extrema() {
                    features.t_max = f.t_max;
                    features.s_max = f.s_max;
                    features.s_limit = f.s_limit;
                }
                (p.a, None, p.b, None)
            }
            GrowthModel::Exponential { a } => (a, None, 0.0, None),
        };
        let (c, ln_c) = match fit.model {
            GrowthModel::SizeSaturation(p) => (implicit_constant(&p, t_ref, s_ref).ok(), None),
            _ => (traj.constant(), traj.ln_constant()),
        };
        Self {
            model: fit.kind.name(),
            domain: fit.kind.domain().name(),
            years: [fit.years.start, fit.years.end],
            a,
            ln_b,
            b,
            r,
            c,
            ln_c,
            sse: fit.sse(),
            anchor: AnchorReport { year: t_ref, gdp: s_ref },
            rates: RatesReport {
                method: "refined",
                window: rates.window,
                degree: rates.degree,
            },
            diagnostics: fit.saturation.as_ref().map(|s| Diagnostics {
                lnF_slope: s.ln_f_slope,
                lnF_sse: s.ln_f_sse,
                feasible_a_floor: s.feasible_a_floor,
                linearized_sse: s.linearized_sse,
                degenerate: s.degenerate,
            }),
            features,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// `year,S,R_direct,R_refined`.
pub fn rates_csv(direct: &RateSeries, refined: &RateSeries) -> String {
    let mut out = String::from("year,S,R_direct,R_refined\n");
    for (d, r) in direct.points().iter().zip(refined.points()) {
        let _ = writeln!(out, "{},{},{},{}", d.t as i32, num(d.s), num(d.r), num(r.r));
    }
    out
}

/// `year,S_<label>...` sampled at every year in `years`.
pub fn projection_csv(trajectories: &[Trajectory], years: &[i32]) -> Result<String, growthcast_core::Error> {
    let mut out = String::from("year");
    for t in trajectories {
        let _ = write!(out, ",S_{}", label(t.kind()));
    }
    out.push('\n');
    for &year in years {
        let _ = write!(out, "{year}");
        for t in trajectories {
            let _ = write!(out, ",{}", num(t.gdp(f64::from(year))?));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Machine-readable projection table: `S`, `sigma` and `dsigma_pct` per
/// trajectory.
pub fn table_csv(rows: &[ProjectionRow]) -> String {
    let mut out = String::from("year");
    if let Some(first) = rows.first() {
        for c in &first.cells {
            let l = label(c.kind);
            let _ = write!(out, ",S_{l},sigma_{l},dsigma_pct_{l}");
        }
    }
    out.push('\n');
    for row in rows {
        let _ = write!(out, "{}", row.year);
        for c in &row.cells {
            let _ = write!(out, ",{},{},{}", num(c.s), num(c.sigma), num(c.dsigma_pct));
        }
        out.push('\n');
    }
    out
}

fn grouped(x: f64) -> String {
    let digits = format!("{:.0}", x.abs());
    let mut out = String::new();
    for (i, ch) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i) % 3 == 0 {
            out.push(',');
        }
        out.push(ch);
    }
    if x < 0.0 && digits.chars().any(|c| c != '0') {
        out.insert(0, '-');
    }
    out
}

fn one_decimal(x: f64) -> String {
    let s = format!("{x:.1}");
    if s == "-0.0" {
        "0.0".into()
    } else {
        s
    }
}

/// Aligned text in the usual projection-table layout: GDP rounded
/// to whole trillions, sigma and its increase to one decimal. The increase
/// is left blank in the reference year.
pub fn table_text(rows: &[ProjectionRow], reference: &StressReference) -> String {
    const S_W: usize = 9;
    const SIG_W: usize = 9;
    const D_W: usize = 11;
    let group = S_W + SIG_W + D_W;
    let mut out = String::new();
    let Some(first) = rows.first() else {
        return out;
    };
    let _ = write!(out, "{:<4}", "");
    for c in &first.cells {
        let _ = write!(out, " | {:^group$}", label(c.kind));
    }
    out.push('\n');
    let _ = write!(out, "{:<4}", "Year");
    for _ in &first.cells {
        let _ = write!(out, " | {:>S_W$}{:>SIG_W$}{:>D_W$}", "S", "σ", "Δσ/Δt [%]");
    }
    out.push('\n');
    let _ = write!(out, "{:-<4}", "");
    for _ in &first.cells {
        let _ = write!(out, "-+-{:-<group$}", "");
    }
    out.push('\n');
    let ref_year = reference.year();
    for row in rows {
        let _ = write!(out, "{:<4}", row.year);
        for c in &row.cells {
            let d = if f64::from(row.year) == ref_year {
                String::new()
            } else {
                one_decimal(c.dsigma_pct)
            };
            let _ = write!(out, " | {:>S_W$}{:>SIG_W$}{:>D_W$}", grouped(c.s), one_decimal(c.sigma), d);
        }
        out.push('\n');
    }
    out.push('\n');
    out.push_str("S: trillions of 2005 US$. ");
    match *reference {
        StressReference::Model { year } => {
            let _ = write!(out, "σ = S(t)/S({year}) of the same trajectory. ");
        }
        StressReference::Observed { year, gdp } => {
            let _ = write!(out, "σ = S(t)/{} (observed GDP in {year}). ", num(gdp));
        }
    }
    out.push_str("Δσ/Δt = 100 [σ(t) − σ(t−1)].\n");
    out.lines().map(|l| format!("{}\n", l.trim_end())).collect()
}

/// `x,lnF,lnF_fit`: the linearized rates and their fitted straight line.
pub fn diagnose_csv(pairs: &[(f64, f64)], line: &growthcast_core::LinearFit) -> String {
    let mut out = String::from("x,lnF,lnF_fit\n");
    for &(x, y) in pairs {
        let _ = writeln!(out, "{},{},{}", num(x), num(y), num(line.eval(x)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.0, 58.0, 0.025, 1.095e-180, 3.787e42, -1.805e-4, 1.0 / 3.0, f64::MIN_POSITIVE] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(f64::NAN), "");
        assert_eq!(num(58.0), "58.0");
    }

    #[test]
    fn grouping() {
        assert_eq!(grouped(87435.2), "87,435");
        assert_eq!(grouped(1942.0), "1,942");
        assert_eq!(grouped(58.4), "58");
        assert_eq!(grouped(123456789.0), "123,456,789");
        assert_eq!(one_decimal(-0.01), "0.0");
    }
}
