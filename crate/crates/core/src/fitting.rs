//! Parameter estimation for the rate models and calibration of trajectory
//! constants.

use alloc::vec::Vec;

use crate::math::{abs, exp, ln};
use crate::models::{LinearRateParams, RateDomain, SaturationRateParams};
use crate::optimize::{golden_section, nelder_mead, NelderMeadOptions};
use crate::rates::RateSeries;
use crate::timeseries::AnnualSeries;
use crate::trajectories::{GrowthModel, Trajectory};
use crate::{Error, Result};

/// Ordinary least-squares line `y = slope x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Sum of squared residuals.
    pub sse: f64,
    pub n: usize,
}

impl LinearFit {
    pub fn eval(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}

/// Least-squares line through `(xs[i], ys[i])`.
pub fn ols_line(xs: &[f64], ys: &[f64]) -> Result<LinearFit> {
    let n = xs.len();
    if n != ys.len() {
        return Err(Error::InvalidParams("xs and ys differ in length"));
    }
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, found: n });
    }
    let nf = n as f64;
    let x_mean = xs.iter().sum::<f64>() / nf;
    let y_mean = ys.iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - x_mean;
        sxx += dx * dx;
        sxy += dx * (y - y_mean);
    }
    if sxx == 0.0 {
        return Err(Error::DegenerateAbscissa);
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let sse = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - (y_mean + slope * (x - x_mean));
            r * r
        })
        .sum();
    Ok(LinearFit {
        slope,
        intercept,
        sse,
        n,
    })
}

/// Result of [`fit_saturation`].
#[derive(Debug, Clone, PartialEq)]
pub struct SaturationFit {
    pub params: SaturationRateParams,
    /// Sum of squared residuals on `R`.
    pub sse: f64,
    /// Line through `(x, ln F)` at the final `a`.
    pub ln_f_slope: f64,
    pub ln_f_sse: f64,
    /// `max(1/R_i)`; every feasible `a` lies above it.
    pub feasible_a_floor: f64,
    /// Estimate from the `ln F` linearization before the simplex polish.
    pub linearized: SaturationRateParams,
    pub linearized_sse: f64,
    /// Flat rates: `b` and `r` are unidentifiable and reported as zero.
    pub degenerate: bool,
}

/// Offsets `a - floor` scanned before the golden-section refinement.
const A_GRID_POINTS: usize = 256;
const A_MIN_OFFSET: f64 = 1e-6;
const A_TOL: f64 = 1e-10;
/// Relative spread of the rates below which they count as constant.
const FLAT_RATE_TOL: f64 = 1e-9;

/// Fits `R(x) = 1/(a - b e^{-r x})` to a rate series.
///
/// For each candidate `a` the points `(x, ln(a - 1/R))` are fitted by a
/// straight line whose intercept and slope give `ln b` and `-r`; the
/// candidate with the smallest squared error on `R` itself wins. Candidates
/// span `(floor + 1e-6, 10 floor]` with `floor = max(1/R_i)`: a log-spaced
/// scan picks the bracket and golden-section search narrows it to `1e-10`.
/// A Nelder–Mead polish on `(a, ln b, r)` then minimizes the same error.
pub fn fit_saturation(rates: &RateSeries, domain: RateDomain) -> Result<SaturationFit> {
    let pts = rates.points();
    if pts.len() < 5 {
        return Err(Error::TooFewPoints {
            needed: 5,
            found: pts.len(),
        });
    }
    if let Some((index, p)) = pts.iter().enumerate().find(|(_, p)| !(p.r > 0.0)) {
        return Err(Error::NonPositiveRate { index, rate: p.r });
    }
    let xs: Vec<f64> = pts.iter().map(|p| domain.abscissa(p.t, p.s)).collect();
    let rs: Vec<f64> = pts.iter().map(|p| p.r).collect();
    let floor = rs.iter().map(|r| 1.0 / r).fold(f64::NEG_INFINITY, f64::max);

    let r_min = rs.iter().copied().fold(f64::INFINITY, f64::min);
    let r_max = rs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let r_mean = rs.iter().sum::<f64>() / rs.len() as f64;
    if (r_max - r_min) <= FLAT_RATE_TOL * r_mean {
        let params = SaturationRateParams::new(floor, 0.0, 0.0, domain)?;
        let sse = rate_sse(&xs, &rs, floor, f64::NEG_INFINITY, 0.0);
        return Ok(SaturationFit {
            params,
            sse,
            ln_f_slope: 0.0,
            ln_f_sse: 0.0,
            feasible_a_floor: floor,
            linearized: params,
            linearized_sse: sse,
            degenerate: true,
        });
    }

    let x_mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let line_for = |a: f64| -> Option<LinearFit> {
        let ln_f: Option<Vec<f64>> = rs
            .iter()
            .map(|r| {
                let f = a - 1.0 / r;
                (f > 0.0).then(|| ln(f))
            })
            .collect();
        ols_line(&xs, &ln_f?).ok()
    };
    let sse_for = |a: f64| -> f64 {
        match line_for(a) {
            Some(line) => rate_sse(&xs, &rs, a, line.intercept, -line.slope),
            None => f64::INFINITY,
        }
    };

    // Log-spaced scan of a - floor; the first minimum wins ties.
    let lo_off = ln(A_MIN_OFFSET);
    let hi_off = ln(9.0 * floor);
    let grid: Vec<f64> = (0..A_GRID_POINTS)
        .map(|k| {
            let u = k as f64 / (A_GRID_POINTS - 1) as f64;
            floor + exp(lo_off + u * (hi_off - lo_off))
        })
        .collect();
    let values: Vec<f64> = grid.iter().map(|&a| sse_for(a)).collect();
    let best = values
        .iter()
        .enumerate()
        .fold(0, |best, (i, v)| if *v < values[best] { i } else { best });
    if !values[best].is_finite() {
        return Err(Error::InvalidParams("no candidate asymptote gives a defined model"));
    }
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(A_GRID_POINTS - 1)];
    let golden = golden_section(sse_for, lo, hi, A_TOL, 500);
    let (a_lin, sse_lin) = if golden.value <= values[best] {
        (golden.x, golden.value)
    } else {
        (grid[best], values[best])
    };
    let line = line_for(a_lin).ok_or(Error::InvalidParams("linearization failed"))?;
    let linearized = saturation_params(a_lin, line.intercept, -line.slope, domain)?;

    // Polish in (a, ln F at the mean abscissa, r): ln b and r are strongly
    // correlated when x is a calendar year.
    let c0 = line.intercept + line.slope * x_mean;
    let r0 = -line.slope;
    let objective = |v: &[f64]| -> f64 {
        let (a, c, r) = (v[0], v[1], v[2]);
        if !(a > floor) || !(r >= 0.0) {
            return f64::INFINITY;
        }
        rate_sse(&xs, &rs, a, c + r * x_mean, r)
    };
    let steps = [
        0.05 * (a_lin - floor).max(A_MIN_OFFSET),
        0.05,
        0.05 * if r0 > 0.0 { r0 } else { 1e-3 },
    ];
    let polish = nelder_mead(objective, &[a_lin, c0, r0], &steps, &NelderMeadOptions::default());
    let (params, sse) = if polish.value <= sse_lin {
        let (a, c, r) = (polish.x[0], polish.x[1], polish.x[2]);
        (saturation_params(a, c + r * x_mean, r, domain)?, polish.value)
    } else {
        (linearized, sse_lin)
    };

    let final_line = line_for(params.a()).ok_or(Error::InvalidParams("linearization failed"))?;
    Ok(SaturationFit {
        params,
        sse,
        ln_f_slope: final_line.slope,
        ln_f_sse: final_line.sse,
        feasible_a_floor: floor,
        linearized,
        linearized_sse: sse_lin,
        degenerate: false,
    })
}

fn saturation_params(a: f64, ln_b: f64, r: f64, domain: RateDomain) -> Result<SaturationRateParams> {
    if r < 0.0 {
        return Err(Error::InvalidParams(
            "ln F increases with x; rates do not follow a saturation curve",
        ));
    }
    SaturationRateParams::from_ln_b(a, ln_b, r, domain)
}

/// `sum (R_i - 1/(a - exp(ln_b - r x_i)))^2`, infinite where the model is
/// undefined.
fn rate_sse(xs: &[f64], rs: &[f64], a: f64, ln_b: f64, r: f64) -> f64 {
    let mut sse = 0.0;
    for (x, obs) in xs.iter().zip(rs) {
        let decay = if ln_b == f64::NEG_INFINITY { 0.0 } else { exp(ln_b - r * x) };
        let d = a - decay;
        if !(d > 0.0) {
            return f64::INFINITY;
        }
        let e = obs - 1.0 / d;
        sse += e * e;
    }
    sse
}

/// Result of [`fit_linear_rate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearRateFit {
    pub params: LinearRateParams,
    pub line: LinearFit,
}

/// Least-squares `R = a + b x` over the points with `start <= t <= end`.
pub fn fit_linear_rate(rates: &RateSeries, domain: RateDomain, start: f64, end: f64) -> Result<LinearRateFit> {
    let window = rates.restrict(start, end);
    if window.is_empty() {
        return Err(Error::EmptyWindow {
            start: start as i32,
            end: end as i32,
        });
    }
    let xs: Vec<f64> = window.points().iter().map(|p| domain.abscissa(p.t, p.s)).collect();
    let ys: Vec<f64> = window.points().iter().map(|p| p.r).collect();
    let line = ols_line(&xs, &ys)?;
    Ok(LinearRateFit {
        params: LinearRateParams::new(line.intercept, line.slope, domain)?,
        line,
    })
}

/// How a trajectory constant is fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Anchor {
    /// Pass exactly through the observation for this year.
    Year(i32),
    /// Pass exactly through a given point.
    Point { year: f64, gdp: f64 },
    /// Minimize `sum (ln S_obs - ln S_model)^2` over the constant.
    LeastSquares,
}

/// Fixes the integration constant of `model` against `series`.
///
/// Fails if the calibrated trajectory is undefined at any observed year.
pub fn calibrate(model: GrowthModel, series: &AnnualSeries, anchor: Anchor) -> Result<Trajectory> {
    let traj = match anchor {
        Anchor::Year(year) => {
            let gdp = series
                .get(year)
                .ok_or(Error::InvalidParams("anchor year not present in series"))?;
            Trajectory::anchored(model, f64::from(year), gdp)?
        }
        Anchor::Point { year, gdp } => Trajectory::anchored(model, year, gdp)?,
        Anchor::LeastSquares => least_squares_anchor(model, series)?,
    };
    for year in series.years() {
        traj.ln_gdp(f64::from(year))?;
    }
    Ok(traj)
}

fn least_squares_anchor(model: GrowthModel, series: &AnnualSeries) -> Result<Trajectory> {
    let t0 = f64::from(series.first_year());
    let obs: Vec<(f64, f64)> = series.points().iter().map(|&(y, s)| (f64::from(y), ln(s))).collect();

    match model {
        // ln S is ln C plus a function of t alone: the optimum is a mean.
        GrowthModel::TimeSaturation(_) | GrowthModel::LinearTime(_) | GrowthModel::Exponential { .. } => {
            let unit = Trajectory::anchored(model, t0, 1.0)?;
            let mut offset = 0.0;
            for &(t, ln_s) in &obs {
                offset += ln_s - unit.ln_gdp(t)?;
            }
            offset /= obs.len() as f64;
            Trajectory::anchored(model, t0, exp(offset))
        }
        GrowthModel::LinearSize(_) | GrowthModel::SizeSaturation(_) => {
            // Each observation defines the trajectory through it; solutions
            // never cross, so the optimum lies between the extreme ones.
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for &(t, ln_s) in &obs {
                let through = Trajectory::anchored(model, t, exp(ln_s))?;
                if let Ok(u) = through.ln_gdp(t0) {
                    lo = lo.min(u);
                    hi = hi.max(u);
                }
            }
            if !lo.is_finite() {
                return Err(Error::Domain {
                    what: "least-squares calibration (no feasible constant)",
                    at: t0,
                });
            }
            let sse = |u: f64| -> f64 {
                let Ok(traj) = Trajectory::anchored(model, t0, exp(u)) else {
                    return f64::INFINITY;
                };
                let mut total = 0.0;
                for &(t, ln_s) in &obs {
                    match traj.ln_gdp(t) {
                        Ok(m) => total += (ln_s - m) * (ln_s - m),
                        Err(_) => return f64::INFINITY,
                    }
                }
                total
            };
            let tol = 1e-13 * abs(hi).max(1.0);
            let u = if hi - lo <= tol {
                lo
            } else {
                golden_section(sse, lo, hi, tol, 500).x
            };
            Trajectory::anchored(model, t0, exp(u))
        }
    }
}
