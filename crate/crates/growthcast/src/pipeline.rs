//! Glue between data, fits and trajectories shared by the subcommands.

use growthcast_core::{
    calibrate, direct_growth_rate, fit_linear_rate, fit_saturation, refined_growth_rate, AnnualSeries, Anchor,
    GrowthModel, LinearRateFit, RateDomain, RateSeries, SaturationFit, Trajectory, TrajectoryKind,
};

use crate::error::usage;
use crate::params::ModelSet;
use crate::CliError;

/// The four fittable rate models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FitModel {
    SaturationTime,
    SaturationSize,
    LinearTime,
    LinearSize,
}

impl FitModel {
    pub fn name(self) -> &'static str {
        match self {
            FitModel::SaturationTime => "saturation-time",
            FitModel::SaturationSize => "saturation-size",
            FitModel::LinearTime => "linear-time",
            FitModel::LinearSize => "linear-size",
        }
    }

    pub fn domain(self) -> RateDomain {
        match self {
            FitModel::SaturationTime | FitModel::LinearTime => RateDomain::Time,
            FitModel::SaturationSize | FitModel::LinearSize => RateDomain::Size,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RateOptions {
    pub window: usize,
    pub degree: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct YearRange {
    pub start: i32,
    pub end: i32,
}

impl std::str::FromStr for YearRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once(':').ok_or_else(|| format!("expected START:END, got `{s}`"))?;
        let start = a.trim().parse().map_err(|_| format!("bad start year `{a}`"))?;
        let end = b.trim().parse().map_err(|_| format!("bad end year `{b}`"))?;
        if start >= end {
            return Err(format!("start year {start} must precede end year {end}"));
        }
        Ok(Self { start, end })
    }
}

/// `YEAR=GDP`, `YEAR` (the observation for that year) or `lsq`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnchorArg {
    Point { year: i32, gdp: f64 },
    Year(i32),
    LeastSquares,
}

impl std::str::FromStr for AnchorArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("lsq") {
            return Ok(AnchorArg::LeastSquares);
        }
        let year = |y: &str| y.trim().parse::<i32>().map_err(|_| format!("bad anchor year `{y}`"));
        match s.split_once('=') {
            Some((y, g)) => {
                let gdp: f64 = g.trim().parse().map_err(|_| format!("bad anchor GDP `{g}`"))?;
                if !(gdp > 0.0 && gdp.is_finite()) {
                    return Err(format!("anchor GDP must be positive, got `{g}`"));
                }
                Ok(AnchorArg::Point { year: year(y)?, gdp })
            }
            None => Ok(AnchorArg::Year(year(s)?)),
        }
    }
}

impl AnchorArg {
    pub fn to_anchor(self) -> Anchor {
        match self {
            AnchorArg::Point { year, gdp } => Anchor::Point { year: f64::from(year), gdp },
            AnchorArg::Year(y) => Anchor::Year(y),
            AnchorArg::LeastSquares => Anchor::LeastSquares,
        }
    }
}

/// `YEAR` (model value) or `YEAR=GDP` (observed value).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceArg(pub crate::params::ReferenceSpec);

impl std::str::FromStr for ReferenceArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.parse::<AnchorArg>()? {
            AnchorArg::Point { year, gdp } => Ok(Self(crate::params::ReferenceSpec { year, gdp: Some(gdp) })),
            AnchorArg::Year(year) => Ok(Self(crate::params::ReferenceSpec { year, gdp: None })),
            AnchorArg::LeastSquares => Err("reference must be YEAR or YEAR=GDP".into()),
        }
    }
}

pub fn refined_rates(series: &AnnualSeries, opts: RateOptions) -> Result<RateSeries, CliError> {
    refined_growth_rate(series, opts.window, opts.degree).map_err(|e| match e {
        growthcast_core::Error::InvalidConfig(msg) => usage(msg),
        other => other.into(),
    })
}

pub fn direct_rates(series: &AnnualSeries) -> Result<RateSeries, CliError> {
    Ok(direct_growth_rate(series)?)
}

/// Everything the `fit` report needs.
#[derive(Debug, Clone)]
pub struct FitOutcome {
    pub kind: FitModel,
    pub years: YearRange,
    pub model: GrowthModel,
    pub trajectory: Trajectory,
    pub saturation: Option<SaturationFit>,
    pub linear: Option<LinearRateFit>,
}

impl FitOutcome {
    pub fn sse(&self) -> f64 {
        match (&self.saturation, &self.linear) {
            (Some(s), _) => s.sse,
            (_, Some(l)) => l.line.sse,
            _ => f64::NAN,
        }
    }
}

/// Clamps `years` to the data; `None` means the whole series.
pub fn resolve_years(series: &AnnualSeries, years: Option<YearRange>) -> Result<YearRange, CliError> {
    let r = years.unwrap_or(YearRange {
        start: series.first_year(),
        end: series.last_year(),
    });
    // Validates overlap and length with the series' own rules.
    let sub = series.slice_years(r.start, r.end)?;
    Ok(YearRange {
        start: sub.first_year(),
        end: sub.last_year(),
    })
}

/// Fits `kind` to refined rates within `years` and calibrates its
/// trajectory. Rates are estimated on the whole series first, so the window
/// edges do not see truncated stencils.
pub fn fit_model(
    series: &AnnualSeries,
    rates: &RateSeries,
    kind: FitModel,
    years: YearRange,
    anchor: Option<AnchorArg>,
) -> Result<FitOutcome, CliError> {
    let (start, end) = (f64::from(years.start), f64::from(years.end));
    let (model, saturation, linear) = match kind {
        FitModel::SaturationTime | FitModel::SaturationSize => {
            let fit = fit_saturation(&rates.restrict(start, end), kind.domain())?;
            let model = if kind == FitModel::SaturationTime {
                GrowthModel::TimeSaturation(fit.params)
            } else {
                GrowthModel::SizeSaturation(fit.params)
            };
            (model, Some(fit), None)
        }
        FitModel::LinearTime | FitModel::LinearSize => {
            let fit = fit_linear_rate(rates, kind.domain(), start, end)?;
            let model = if kind == FitModel::LinearTime {
                GrowthModel::LinearTime(fit.params)
            } else {
                GrowthModel::LinearSize(fit.params)
            };
            (model, None, Some(fit))
        }
    };
    let window = series.slice_years(years.start, years.end)?;
    let anchor = anchor.unwrap_or(AnchorArg::Year(years.end));
    let trajectory = anchor_trajectory(model, &window, anchor)?;
    Ok(FitOutcome {
        kind,
        years,
        model,
        trajectory,
        saturation,
        linear,
    })
}

fn anchor_trajectory(model: GrowthModel, series: &AnnualSeries, anchor: AnchorArg) -> Result<Trajectory, CliError> {
    match anchor {
        AnchorArg::Point { year, gdp } => Ok(Trajectory::anchored(model, f64::from(year), gdp)?),
        AnchorArg::Year(y) if series.get(y).is_none() => {
            Err(usage(format!("anchor year {y} is not in the data")))
        }
        other => Ok(calibrate(model, series, other.to_anchor())?),
    }
}

/// Where projection models come from when no parameter file is given.
#[derive(Debug, Clone, Copy)]
pub struct DataFitPlan {
    pub rates: RateOptions,
    /// Window of the saturation fits; `None` is the whole series.
    pub saturation_years: Option<YearRange>,
    /// Window of the linear fits.
    pub linear_years: Option<YearRange>,
}

/// Fits T1, T2, T3 and the size model to the data.
pub fn fit_all(series: &AnnualSeries, plan: &DataFitPlan) -> Result<ModelSet, CliError> {
    let rates = refined_rates(series, plan.rates)?;
    let sat_years = resolve_years(series, plan.saturation_years)?;
    let lin_years = match plan.linear_years {
        Some(y) => resolve_years(series, Some(y))?,
        None => resolve_years(
            series,
            Some(YearRange {
                start: 1980.max(series.first_year()),
                end: series.last_year(),
            }),
        )?,
    };
    let fit = |k: FitModel, y: YearRange| -> Result<GrowthModel, CliError> {
        let (start, end) = (f64::from(y.start), f64::from(y.end));
        Ok(match k {
            FitModel::SaturationTime => {
                GrowthModel::TimeSaturation(fit_saturation(&rates.restrict(start, end), RateDomain::Time)?.params)
            }
            FitModel::SaturationSize => {
                GrowthModel::SizeSaturation(fit_saturation(&rates.restrict(start, end), RateDomain::Size)?.params)
            }
            FitModel::LinearTime => GrowthModel::LinearTime(fit_linear_rate(&rates, RateDomain::Time, start, end)?.params),
            FitModel::LinearSize => GrowthModel::LinearSize(fit_linear_rate(&rates, RateDomain::Size, start, end)?.params),
        })
    };
    Ok(ModelSet {
        t1: Some(fit(FitModel::SaturationTime, sat_years)?),
        t2: Some(fit(FitModel::LinearTime, lin_years)?),
        t3: Some(fit(FitModel::LinearSize, lin_years)?),
        size: Some(fit(FitModel::SaturationSize, sat_years)?),
    })
}

/// Calibrates the requested kinds from `models`. The asymptotic
/// exponential follows T1 (or the size model when T1 is absent).
pub fn build_trajectories(
    models: &ModelSet,
    kinds: &[TrajectoryKind],
    series: Option<&AnnualSeries>,
    anchor: AnchorArg,
) -> Result<Vec<Trajectory>, CliError> {
    let anchored = |kind: TrajectoryKind| -> Result<Trajectory, CliError> {
        let model = models
            .get(kind)
            .ok_or_else(|| usage(format!("no parameters for {}", kind.name())))?;
        match (anchor, series) {
            (AnchorArg::Point { year, gdp }, _) => Ok(Trajectory::anchored(model, f64::from(year), gdp)?),
            (other, Some(s)) => anchor_trajectory(model, s, other),
            (_, None) => Err(usage("anchoring to the data needs --input; use --anchor YEAR=GDP")),
        }
    };
    kinds
        .iter()
        .map(|&kind| match kind {
            TrajectoryKind::AsymptoticExp => {
                let base = if models.t1.is_some() {
                    TrajectoryKind::T1
                } else {
                    TrajectoryKind::NumericSizeOde
                };
                Ok(anchored(base)?.asymptote()?)
            }
            other => anchored(other),
        })
        .collect()
}
