//! Plot-ready CSVs, one per figure of the original analysis. Model columns
//! come from whatever rate models the caller supplies (fitted or from a
//! parameter file); data columns are blank outside the observed years.

use std::fmt::Write as _;

use growthcast_core::{AnnualSeries, GrowthModel, RateSeries, Trajectory, TrajectoryKind};

use crate::params::ModelSet;
use crate::pipeline::{build_trajectories, AnchorArg};
use crate::report::num;
use crate::CliError;

/// Last year of the medium-range figures.
const MEDIUM_END: i32 = 2100;
/// Last year of the long-range projection figure.
const LONG_END: i32 = 2300;

pub struct Figure {
    pub name: &'static str,
    pub csv: String,
}

struct Table {
    out: String,
}

impl Table {
    fn new(header: &str) -> Self {
        Self {
            out: format!("{header}\n"),
        }
    }

    fn row(&mut self, first: impl std::fmt::Display, cells: &[Option<f64>]) {
        let _ = write!(self.out, "{first}");
        for c in cells {
            let _ = write!(self.out, ",{}", c.map(num).unwrap_or_default());
        }
        self.out.push('\n');
    }

    fn finish(self, name: &'static str) -> Figure {
        Figure { name, csv: self.out }
    }
}

fn gdp_at(t: &Trajectory, year: i32) -> Result<Option<f64>, CliError> {
    Ok(Some(t.gdp(f64::from(year))?))
}

/// All nine figures, in order.
pub fn figures(
    series: &AnnualSeries,
    direct: &RateSeries,
    refined: &RateSeries,
    models: &ModelSet,
    anchor: AnchorArg,
) -> Result<Vec<Figure>, CliError> {
    use TrajectoryKind::*;
    let first = series.first_year();
    let last = series.last_year();
    let rate_of = |year: i32| {
        refined
            .points()
            .iter()
            .find(|p| p.t == f64::from(year))
            .map(|p| p.r)
    };
    let need = |kind: TrajectoryKind| {
        models
            .get(kind)
            .ok_or_else(|| crate::error::usage(format!("no parameters for {}", kind.name())))
    };
    let t1_model = need(T1)?;
    let size_model = need(NumericSizeOde)?;
    let (t2_model, t3_model) = (need(T2)?, need(T3)?);

    let trajs = build_trajectories(models, &[T1, AsymptoticExp, T2, T3, NumericSizeOde], Some(series), anchor)?;
    let [t1, t1_asym, t2, t3, size] = [trajs[0], trajs[1], trajs[2], trajs[3], trajs[4]];
    let size_asym = size.asymptote()?;
    let mut figs = Vec::with_capacity(9);

    let mut f = Table::new("year,R_direct,R_refined");
    for (d, r) in direct.points().iter().zip(refined.points()) {
        f.row(d.t as i32, &[Some(d.r), Some(r.r)]);
    }
    figs.push(f.finish("fig1_rates.csv"));

    // ln F = ln(a - 1/R) against the model line ln b - r t.
    let GrowthModel::TimeSaturation(p1) = t1_model else {
        unreachable!("slot checked by ModelSet")
    };
    let mut f = Table::new("year,lnF,lnF_model");
    for pt in refined.points() {
        let ln_f = (pt.r > 0.0 && p1.a() - 1.0 / pt.r > 0.0).then(|| (p1.a() - 1.0 / pt.r).ln());
        f.row(pt.t as i32, &[ln_f, Some(p1.ln_b() - p1.r() * pt.t)]);
    }
    figs.push(f.finish("fig2_lnF.csv"));

    let mut f = Table::new("year,R_refined,R_T1");
    for year in first..=MEDIUM_END {
        f.row(year, &[rate_of(year), Some(t1_model.rate(f64::from(year), f64::NAN)?)]);
    }
    figs.push(f.finish("fig3_rate_time.csv"));

    for (name, end) in [("fig4_gdp.csv", last), ("fig5_gdp_2100.csv", MEDIUM_END)] {
        let mut f = Table::new("year,S_data,S_T1,S_asymptotic");
        for year in first..=end {
            f.row(year, &[series.get(year), gdp_at(&t1, year)?, gdp_at(&t1_asym, year)?]);
        }
        figs.push(f.finish(name));
    }

    let mut f = Table::new("year,S,R_refined,R_size");
    for pt in refined.points() {
        f.row(pt.t as i32, &[Some(pt.s), Some(pt.r), Some(size_model.rate(pt.t, pt.s)?)]);
    }
    figs.push(f.finish("fig6_rate_size.csv"));

    let mut f = Table::new("year,S_data,S_size,S_asymptotic");
    for year in first..=MEDIUM_END {
        f.row(year, &[series.get(year), gdp_at(&size, year)?, gdp_at(&size_asym, year)?]);
    }
    figs.push(f.finish("fig7_gdp_size.csv"));

    let mut f = Table::new("year,S,R_refined,R_linear_time,R_linear_size");
    for pt in refined.points() {
        f.row(
            pt.t as i32,
            &[Some(pt.s), Some(pt.r), Some(t2_model.rate(pt.t, pt.s)?), Some(t3_model.rate(pt.t, pt.s)?)],
        );
    }
    figs.push(f.finish("fig8_linear_rates.csv"));

    let mut f = Table::new("year,S_data,S_T1,S_T2,S_T3");
    for year in first..=LONG_END {
        f.row(year, &[series.get(year), gdp_at(&t1, year)?, gdp_at(&t2, year)?, gdp_at(&t3, year)?]);
    }
    figs.push(f.finish("fig9_projections.csv"));

    Ok(figs)
}
