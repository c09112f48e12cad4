//! GDP trajectories generated by the rate models.
//!
//! | kind             | rate             | trajectory                                     |
//! |------------------|------------------|------------------------------------------------|
//! | T1               | `1/(a-be^{-rt})` | `C exp[t/a + ln(a - be^{-rt})/(ra)]`           |
//! | T2               | `a + bt`         | `C exp[at + bt^2/2]`                           |
//! | T3               | `a + bS`         | `1 / (C e^{-at} - b/a)`                        |
//! | asymptotic exp   | `1/a`            | `C e^{t/a}`                                    |
//! | numeric size ODE | `1/(a-be^{-rS})` | RK4 on `d ln S/dt = R(S)`                      |
//!
//! With calendar-year time the constants `C` span hundreds of orders of
//! magnitude (T2 needs `C ~ 1e-180`), so a [`Trajectory`] is stored as its
//! model plus one point `(t_ref, ln S(t_ref))` it passes through. Every
//! closed form is then evaluated as a difference from that point and
//! exponentiated last; `C` is derived on request.

use alloc::vec::Vec;

use crate::math::{abs, ceil, checked_exp, exp, floor, ln};
use crate::models::{LinearRateParams, RateDomain, SaturationRateParams};
use crate::{Error, Result};

/// Epoch at which a trajectory built from a printed constant is pinned.
const CONSTANT_EPOCH: f64 = 2000.0;

/// Default RK4 step, in years.
pub const DEFAULT_ODE_STEP: f64 = 0.25;

/// Largest relative change tolerated when the RK4 step is halved.
const ODE_HALVING_TOL: f64 = 1e-8;
const ODE_MAX_HALVINGS: usize = 8;

/// Largest `rS` accepted by the implicit series.
pub const SERIES_GUARD: f64 = 30.0;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_TERM_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrajectoryKind {
    T1,
    T2,
    T3,
    AsymptoticExp,
    NumericSizeOde,
}

impl TrajectoryKind {
    pub fn name(self) -> &'static str {
        match self {
            TrajectoryKind::T1 => "T1",
            TrajectoryKind::T2 => "T2",
            TrajectoryKind::T3 => "T3",
            TrajectoryKind::AsymptoticExp => "asymptotic",
            TrajectoryKind::NumericSizeOde => "numeric",
        }
    }
}

/// A rate model paired with the trajectory family it generates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GrowthModel {
    /// T1.
    TimeSaturation(SaturationRateParams),
    /// T2.
    LinearTime(LinearRateParams),
    /// T3.
    LinearSize(LinearRateParams),
    /// Constant rate `1/a`.
    Exponential { a: f64 },
    /// Size-saturation rate, solved numerically.
    SizeSaturation(SaturationRateParams),
}

impl GrowthModel {
    pub fn kind(&self) -> TrajectoryKind {
        match self {
            GrowthModel::TimeSaturation(_) => TrajectoryKind::T1,
            GrowthModel::LinearTime(_) => TrajectoryKind::T2,
            GrowthModel::LinearSize(_) => TrajectoryKind::T3,
            GrowthModel::Exponential { .. } => TrajectoryKind::AsymptoticExp,
            GrowthModel::SizeSaturation(_) => TrajectoryKind::NumericSizeOde,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self {
            GrowthModel::TimeSaturation(p) => p.domain() == RateDomain::Time,
            GrowthModel::LinearTime(p) => p.domain == RateDomain::Time,
            GrowthModel::LinearSize(p) => p.domain == RateDomain::Size,
            GrowthModel::Exponential { a } => *a > 0.0 && a.is_finite(),
            GrowthModel::SizeSaturation(p) => p.domain() == RateDomain::Size,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParams("model parameters do not match the trajectory kind"))
        }
    }

    /// Growth rate at time `t` and size `s`.
    pub fn rate(&self, t: f64, s: f64) -> Result<f64> {
        match self {
            GrowthModel::TimeSaturation(p) => p.rate_at(t),
            GrowthModel::LinearTime(p) => Ok(p.rate_at(t)),
            GrowthModel::LinearSize(p) => Ok(p.rate_at(s)),
            GrowthModel::Exponential { a } => Ok(1.0 / a),
            GrowthModel::SizeSaturation(p) => p.rate_at(s),
        }
    }
}

/// A calibrated trajectory `S(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trajectory {
    model: GrowthModel,
    t_ref: f64,
    ln_s_ref: f64,
    /// `S` at `t_ref`, kept exactly as given.
    s_ref: f64,
    /// RK4 step for the numeric kind; unused otherwise.
    step: f64,
}

impl Trajectory {
    /// The trajectory of `model` through `(t, s)`.
    pub fn anchored(model: GrowthModel, t: f64, s: f64) -> Result<Self> {
        model.validate()?;
        if !(s > 0.0) || !s.is_finite() || !t.is_finite() {
            return Err(Error::InvalidParams("anchor must be a finite year and a positive size"));
        }
        // Rejects anchors outside the model's domain.
        model.rate(t, s)?;
        Ok(Self {
            model,
            t_ref: t,
            ln_s_ref: ln(s),
            s_ref: s,
            step: DEFAULT_ODE_STEP,
        })
    }

    /// The trajectory with integration constant `c` in the closed form of
    /// its kind. Not available for the numeric kind.
    pub fn from_constant(model: GrowthModel, c: f64) -> Result<Self> {
        model.validate()?;
        if !c.is_finite() {
            return Err(Error::InvalidParams("integration constant must be finite"));
        }
        let t = match model {
            GrowthModel::TimeSaturation(p) => match p.lower_bound() {
                Some(t_min) if t_min >= CONSTANT_EPOCH => t_min + 1.0,
                _ => CONSTANT_EPOCH,
            },
            _ => CONSTANT_EPOCH,
        };
        let ln_s = match model {
            GrowthModel::TimeSaturation(p) => {
                positive_constant(c)?;
                ln(c) + time_saturation_integral(&p, t)?
            }
            GrowthModel::LinearTime(p) => {
                positive_constant(c)?;
                ln(c) + t * (p.a + 0.5 * p.b * t)
            }
            GrowthModel::Exponential { a } => {
                positive_constant(c)?;
                ln(c) + t / a
            }
            GrowthModel::LinearSize(p) => {
                let d = if p.a == 0.0 {
                    c - p.b * t
                } else {
                    c * exp(-p.a * t) - p.b / p.a
                };
                if !(d > 0.0) {
                    return Err(Error::Domain {
                        what: "T3 trajectory (C e^{-at} - b/a <= 0)",
                        at: t,
                    });
                }
                -ln(d)
            }
            GrowthModel::SizeSaturation(_) => {
                return Err(Error::InvalidParams(
                    "numeric trajectories have no closed-form constant; anchor them instead",
                ))
            }
        };
        Ok(Self {
            model,
            t_ref: t,
            ln_s_ref: ln_s,
            s_ref: exp(ln_s),
            step: DEFAULT_ODE_STEP,
        })
    }

    /// Replaces the RK4 step used by the numeric kind.
    pub fn with_step(mut self, step: f64) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::InvalidConfig("ODE step must be positive"));
        }
        self.step = step;
        Ok(self)
    }

    pub fn model(&self) -> &GrowthModel {
        &self.model
    }

    pub fn kind(&self) -> TrajectoryKind {
        self.model.kind()
    }

    /// The point the trajectory was pinned to, `(t, S)`.
    pub fn reference(&self) -> (f64, f64) {
        (self.t_ref, self.s_ref)
    }

    /// Integration constant `C` of the closed form; `None` for the numeric
    /// kind and for T1 with `r = 0`.
    pub fn constant(&self) -> Option<f64> {
        match self.model {
            GrowthModel::LinearSize(p) => {
                let inv = exp(-self.ln_s_ref);
                Some(if p.a == 0.0 {
                    inv + p.b * self.t_ref
                } else {
                    (inv + p.b / p.a) * exp(p.a * self.t_ref)
                })
            }
            _ => self.ln_constant().map(exp),
        }
    }

    /// `ln C` where `C` is positive.
    pub fn ln_constant(&self) -> Option<f64> {
        let t = self.t_ref;
        match self.model {
            GrowthModel::TimeSaturation(p) => time_saturation_integral(&p, t)
                .ok()
                .map(|g| self.ln_s_ref - g),
            GrowthModel::LinearTime(p) => Some(self.ln_s_ref - t * (p.a + 0.5 * p.b * t)),
            GrowthModel::Exponential { a } => Some(self.ln_s_ref - t / a),
            GrowthModel::LinearSize(p) => {
                let inv = exp(-self.ln_s_ref);
                if p.a == 0.0 {
                    let c = inv + p.b * t;
                    (c > 0.0).then(|| ln(c))
                } else {
                    let k = inv + p.b / p.a;
                    (k > 0.0).then(|| ln(k) + p.a * t)
                }
            }
            GrowthModel::SizeSaturation(_) => None,
        }
    }

    /// Open time interval on which the trajectory is defined.
    pub fn domain(&self) -> (f64, f64) {
        let all = (f64::NEG_INFINITY, f64::INFINITY);
        match self.model {
            GrowthModel::TimeSaturation(p) => match p.lower_bound() {
                Some(t_min) => (t_min, f64::INFINITY),
                None if p.denominator(0.0) > 0.0 => all,
                None => (f64::INFINITY, f64::INFINITY),
            },
            GrowthModel::LinearSize(p) => {
                let inv = exp(-self.ln_s_ref);
                // Offset from t_ref at which the denominator vanishes.
                let root = if p.a == 0.0 {
                    (p.b != 0.0).then(|| inv / p.b)
                } else {
                    let k = inv + p.b / p.a;
                    let ratio = (p.b / p.a) / k;
                    (ratio > 0.0 && k != 0.0).then(|| -ln(ratio) / p.a)
                };
                match root {
                    Some(d) if d > 0.0 => (f64::NEG_INFINITY, self.t_ref + d),
                    Some(d) => (self.t_ref + d, f64::INFINITY),
                    None => all,
                }
            }
            _ => all,
        }
    }

    /// `ln S(t)`.
    pub fn ln_gdp(&self, t: f64) -> Result<f64> {
        let dt = t - self.t_ref;
        match self.model {
            GrowthModel::TimeSaturation(p) => {
                if p.is_exponential() {
                    return Ok(self.ln_s_ref + dt / p.a());
                }
                let d = p.denominator(t);
                if !(d > 0.0) {
                    return Err(Error::Domain {
                        what: "T1 trajectory (t <= ln(b/a)/r)",
                        at: t,
                    });
                }
                let d_ref = p.denominator(self.t_ref);
                if p.r() == 0.0 {
                    return Ok(self.ln_s_ref + dt / d);
                }
                Ok(self.ln_s_ref + dt / p.a() + ln(d / d_ref) / (p.r() * p.a()))
            }
            GrowthModel::LinearTime(p) => Ok(self.ln_s_ref + dt * (p.a + 0.5 * p.b * (t + self.t_ref))),
            GrowthModel::LinearSize(p) => {
                let inv = exp(-self.ln_s_ref);
                let d = if p.a == 0.0 {
                    inv - p.b * dt
                } else {
                    // k e^{-a dt} - b/a with the (1 - e^{-a dt})/a part kept
                    // accurate for small a.
                    let decay = exp(-p.a * dt);
                    inv * decay + p.b * (libm::expm1(-p.a * dt) / p.a)
                };
                if !(d > 0.0) {
                    return Err(Error::Domain {
                        what: "T3 trajectory (C e^{-at} - b/a <= 0)",
                        at: t,
                    });
                }
                Ok(-ln(d))
            }
            GrowthModel::Exponential { a } => Ok(self.ln_s_ref + dt / a),
            GrowthModel::SizeSaturation(p) => {
                let n = steps_for(abs(dt), self.step);
                integrate_log_size(&p, self.ln_s_ref, dt, n)
            }
        }
    }

    /// `S(t)`, or a range error if `|ln S| > 700`.
    pub fn gdp(&self, t: f64) -> Result<f64> {
        if t == self.t_ref && self.s_ref.is_finite() && self.s_ref > 0.0 {
            return Ok(self.s_ref);
        }
        checked_exp(self.ln_gdp(t)?)
    }

    /// The generating rate model evaluated along the trajectory.
    pub fn rate(&self, t: f64) -> Result<f64> {
        match self.model {
            GrowthModel::LinearSize(_) | GrowthModel::SizeSaturation(_) => {
                let s = exp(self.ln_gdp(t)?);
                self.model.rate(t, s)
            }
            _ => self.model.rate(t, f64::NAN),
        }
    }

    /// The exponential `C' e^{t/a}` this trajectory merges into: T1 and the
    /// numeric kind approach rate `1/a`. Other kinds have no such asymptote.
    pub fn asymptote(&self) -> Result<Trajectory> {
        let ln_s = match self.model {
            GrowthModel::Exponential { .. } => return Ok(*self),
            GrowthModel::TimeSaturation(p) => {
                if p.is_exponential() || p.r() == 0.0 {
                    // Already exponential (r = 0 has rate 1/(a - b)).
                    self.ln_s_ref
                } else {
                    let d_ref = p.denominator(self.t_ref);
                    self.ln_s_ref + ln(p.a() / d_ref) / (p.r() * p.a())
                }
            }
            GrowthModel::SizeSaturation(p) => {
                let s_ref = exp(self.ln_s_ref);
                if p.is_exponential() || p.r() * s_ref > SERIES_GUARD {
                    // The remaining E1(rS) term is below b e^{-30}/30.
                    self.ln_s_ref
                } else {
                    // sum (-1)^{n+1} x^n/(n n!) -> gamma + ln x as x grows.
                    let c = implicit_constant(&p, self.t_ref, s_ref)?;
                    (self.t_ref + c - p.b() * (EULER_GAMMA + ln(p.r()))) / p.a()
                }
            }
            _ => {
                return Err(Error::InvalidParams(
                    "only T1, the numeric kind and the exponential have an exponential asymptote",
                ))
            }
        };
        let a = match self.model {
            GrowthModel::TimeSaturation(p) if p.r() == 0.0 => p.a() - p.b(),
            GrowthModel::TimeSaturation(p) | GrowthModel::SizeSaturation(p) => p.a(),
            _ => unreachable!(),
        };
        Ok(Trajectory {
            model: GrowthModel::Exponential { a },
            t_ref: self.t_ref,
            ln_s_ref: ln_s,
            s_ref: exp(ln_s),
            step: DEFAULT_ODE_STEP,
        })
    }

    /// Characteristic features: maximum for T2, limit for T3, singular time
    /// and limit rate for T1. Features that do not exist (e.g. `b >= 0`)
    /// are `None`.
    pub fn extrema(&self) -> Result<TrajectoryFeatures> {
        let mut f = TrajectoryFeatures::default();
        match self.model {
            GrowthModel::LinearTime(p) => {
                if let Some(t_max) = p.zero_crossing() {
                    f.t_max = Some(t_max);
                    f.s_max = Some(self.gdp(t_max)?);
                }
            }
            GrowthModel::LinearSize(p) => {
                f.s_limit = p.zero_crossing();
            }
            GrowthModel::TimeSaturation(p) => {
                f.t_min = p.lower_bound();
                f.asymptotic_rate = Some(1.0 / p.a());
            }
            _ => {
                return Err(Error::InvalidParams(
                    "features are defined for T1, T2 and T3 only",
                ))
            }
        }
        Ok(f)
    }
}

fn positive_constant(c: f64) -> Result<()> {
    if c > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams("integration constant must be positive"))
    }
}

/// Features reported by [`Trajectory::extrema`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TrajectoryFeatures {
    /// Year of the T2 maximum, `a/|b|`.
    pub t_max: Option<f64>,
    pub s_max: Option<f64>,
    /// T3 limit `a/|b|`.
    pub s_limit: Option<f64>,
    /// T1 singular time `ln(b/a)/r`.
    pub t_min: Option<f64>,
    /// T1 limit rate `1/a`.
    pub asymptotic_rate: Option<f64>,
}

/// `t/a + ln(a - b e^{-rt})/(ra)`, the antiderivative of
/// `1/(a - b e^{-rt})`. For `b = 0` the constant log term is dropped.
pub fn time_saturation_integral(p: &SaturationRateParams, t: f64) -> Result<f64> {
    if p.is_exponential() {
        return Ok(t / p.a());
    }
    if p.r() == 0.0 {
        return Err(Error::InvalidParams("antiderivative needs r > 0"));
    }
    let d = p.denominator(t);
    if !(d > 0.0) {
        return Err(Error::Domain {
            what: "saturation antiderivative (a - b e^{-rt} <= 0)",
            at: t,
        });
    }
    Ok(t / p.a() + ln(d) / (p.r() * p.a()))
}

fn steps_for(span: f64, step: f64) -> usize {
    if span == 0.0 {
        0
    } else {
        (ceil(span / step) as usize).max(1)
    }
}

/// `d ln S / dt` for the size-saturation model.
fn log_size_slope(p: &SaturationRateParams, y: f64) -> Result<f64> {
    let s = exp(y);
    let d = p.denominator(s);
    if !(d > 0.0) {
        return Err(Error::Domain {
            what: "size ODE (a - b e^{-rS} <= 0)",
            at: s,
        });
    }
    Ok(1.0 / d)
}

/// Classical RK4 on `y = ln S` over a signed span `dt` in `n` equal steps.
fn integrate_log_size(p: &SaturationRateParams, y0: f64, dt: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Ok(y0);
    }
    let h = dt / n as f64;
    let mut y = y0;
    for _ in 0..n {
        let k1 = log_size_slope(p, y)?;
        let k2 = log_size_slope(p, y + 0.5 * h * k1)?;
        let k3 = log_size_slope(p, y + 0.5 * h * k2)?;
        let k4 = log_size_slope(p, y + h * k3)?;
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    Ok(y)
}

/// Annual samples of a numerically solved size-saturation trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledTrajectory {
    pub params: SaturationRateParams,
    /// `(t, S)` pairs, one per year from `t0` toward `t_end`, ending at `t_end`.
    pub points: Vec<(f64, f64)>,
    /// Step that produced `points`.
    pub step: f64,
}

impl SampledTrajectory {
    /// Continuous trajectory through the initial sample using the same step.
    pub fn to_trajectory(&self) -> Result<Trajectory> {
        let (t0, s0) = self.points[0];
        Trajectory::anchored(GrowthModel::SizeSaturation(self.params), t0, s0)?.with_step(self.step)
    }
}

/// Solves `dS/dt = S / (a - b e^{-rS})` from `(t0, s0)` to `t_end` with
/// fixed-step RK4 (integrating `ln S`, which is the same equation) and
/// returns annual samples.
///
/// The step is accepted only when halving it moves no sample by more than
/// `1e-8` relative; otherwise it is halved again, up to eight times.
pub fn solve_size_ode(
    p: &SaturationRateParams,
    s0: f64,
    t0: f64,
    t_end: f64,
    step: f64,
) -> Result<SampledTrajectory> {
    if p.domain() != RateDomain::Size {
        return Err(Error::InvalidParams("expected size-domain saturation parameters"));
    }
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::InvalidConfig("ODE step must be positive"));
    }
    if !(s0 > 0.0) || !s0.is_finite() || !t0.is_finite() || !t_end.is_finite() {
        return Err(Error::InvalidParams("initial condition must be finite with S0 > 0"));
    }
    p.rate_at(s0)?;

    let sign = if t_end >= t0 { 1.0 } else { -1.0 };
    let whole = floor(abs(t_end - t0)) as usize;
    let mut times: Vec<f64> = (0..=whole).map(|k| t0 + sign * k as f64).collect();
    if abs(t_end - times[times.len() - 1]) > 0.0 {
        times.push(t_end);
    }

    let mut h = step;
    let mut coarse = sample_log_size(p, ln(s0), &times, h)?;
    let mut worst = f64::INFINITY;
    for _ in 0..ODE_MAX_HALVINGS {
        let fine = sample_log_size(p, ln(s0), &times, h / 2.0)?;
        worst = coarse
            .iter()
            .zip(&fine)
            .map(|(c, f)| abs(libm::expm1(c - f)))
            .fold(0.0, f64::max);
        if worst <= ODE_HALVING_TOL {
            return Ok(SampledTrajectory {
                params: *p,
                points: times
                    .iter()
                    .zip(&fine)
                    .map(|(&t, &y)| (t, exp(y)))
                    .collect(),
                step: h / 2.0,
            });
        }
        h /= 2.0;
        coarse = fine;
    }
    Err(Error::AccuracyGuard { max_rel_change: worst })
}

fn sample_log_size(p: &SaturationRateParams, y0: f64, times: &[f64], h: f64) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(times.len());
    let mut y = y0;
    out.push(y);
    for w in times.windows(2) {
        let dt = w[1] - w[0];
        y = integrate_log_size(p, y, dt, steps_for(abs(dt), h))?;
        out.push(y);
    }
    Ok(out)
}

/// `sum_{n>=1} (-1)^{n+1} x^n / (n n!)`, the entire part of
/// `-int e^{-x}/x dx`, summed until a term falls below `1e-14` of the sum.
pub fn saturation_series(x: f64) -> Result<f64> {
    if !(x >= 0.0) || x > SERIES_GUARD {
        return Err(Error::SeriesGuard { argument: x });
    }
    let mut power_over_fact = 1.0;
    // Neumaier compensated sum.
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut n = 1u32;
    loop {
        let nf = f64::from(n);
        power_over_fact *= x / nf;
        let term = if n % 2 == 1 { power_over_fact / nf } else { -power_over_fact / nf };
        let t = sum + term;
        if abs(sum) >= abs(term) {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        if nf > x && abs(term) <= SERIES_TERM_TOL * abs(sum + comp) {
            break;
        }
        if power_over_fact == 0.0 {
            break;
        }
        n += 1;
    }
    Ok(sum + comp)
}

/// `(a - b) ln S + b sum_{n>=1} (-1)^{n+1} (rS)^n/(n n!)`, which equals
/// `t + C` along any solution of the size ODE.
fn implicit_lhs(p: &SaturationRateParams, s: f64) -> Result<f64> {
    if p.domain() != RateDomain::Size {
        return Err(Error::InvalidParams("expected size-domain saturation parameters"));
    }
    if !(s > 0.0) {
        return Err(Error::Domain {
            what: "implicit solution (S <= 0)",
            at: s,
        });
    }
    if !(p.denominator(s) > 0.0) {
        return Err(Error::Domain {
            what: "implicit solution (S below the monotone branch)",
            at: s,
        });
    }
    if p.is_exponential() {
        return Ok(p.a() * ln(s));
    }
    let rs = p.r() * s;
    if rs > SERIES_GUARD {
        return Err(Error::SeriesGuard { argument: rs });
    }
    let b = p.b();
    Ok((p.a() - b) * ln(s) + b * saturation_series(rs)?)
}

/// Constant `C` of the implicit solution passing through `(t_ref, s_ref)`.
pub fn implicit_constant(p: &SaturationRateParams, t_ref: f64, s_ref: f64) -> Result<f64> {
    Ok(implicit_lhs(p, s_ref)? - t_ref)
}

/// Time at which the size-saturation trajectory with implicit constant `c`
/// reaches size `s`.
pub fn implicit_time_of_size(p: &SaturationRateParams, c: f64, s: f64) -> Result<f64> {
    Ok(implicit_lhs(p, s)? - c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1_params() -> SaturationRateParams {
        SaturationRateParams::new(3.940e1, 3.787e42, 4.836e-2, RateDomain::Time).unwrap()
    }

    fn size_params() -> SaturationRateParams {
        SaturationRateParams::new(3.805e1, 5.124e1, 7.927e-2, RateDomain::Size).unwrap()
    }

    fn t2_params() -> LinearRateParams {
        LinearRateParams::new(3.895e-1, -1.805e-4, RateDomain::Time).unwrap()
    }

    fn t3_params() -> LinearRateParams {
        LinearRateParams::new(3.539e-2, -1.641e-4, RateDomain::Size).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn t1_anchored_and_printed_constant() {
        let model = GrowthModel::TimeSaturation(t1_params());
        let anchored = Trajectory::anchored(model, 2014.0, 58.0).unwrap();
        assert!(rel(anchored.gdp(2014.0).unwrap(), 58.0) < 1e-14);
        assert!(rel(anchored.gdp(2100.0).unwrap(), 546.0) < 0.05);

        let printed = Trajectory::from_constant(model, 5.650e-22).unwrap();
        let s2100 = printed.gdp(2100.0).unwrap();
        assert!((s2100 - 545.0).abs() < 2.0, "{s2100}");
        assert!(rel(printed.constant().unwrap(), 5.650e-22) < 1e-12);

        assert!(matches!(anchored.gdp(1950.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn t1_with_zero_b_is_exponential() {
        let p = SaturationRateParams::new(30.0, 0.0, 0.05, RateDomain::Time).unwrap();
        let (t0, s0) = (2000.0, 40.0);
        let c = s0 * exp(-t0 / 30.0);
        let traj = Trajectory::from_constant(GrowthModel::TimeSaturation(p), c).unwrap();
        for t in [1990.0, 2000.0, 2050.0] {
            let expected = s0 * exp((t - t0) / 30.0);
            assert!(rel(traj.gdp(t).unwrap(), expected) < 1e-12);
        }
    }

    #[test]
    fn asymptotic_exponential_doubling() {
        let traj = Trajectory::anchored(GrowthModel::Exponential { a: 39.40 }, 2014.0, 58.0).unwrap();
        let s = traj.gdp(2014.0 + 27.31).unwrap();
        assert!((s - 116.0).abs() < 0.5, "{s}");
        let unit = Trajectory::from_constant(GrowthModel::Exponential { a: 1.0 }, 1.0).unwrap();
        assert!((unit.gdp(0.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn t1_over_asymptotic_tends_to_a_power() {
        let p = t1_params();
        let t1 = Trajectory::from_constant(GrowthModel::TimeSaturation(p), 1e-20).unwrap();
        let asym = Trajectory::from_constant(GrowthModel::Exponential { a: p.a() }, 1e-20).unwrap();
        let limit = ln(p.a()) / (p.r() * p.a());
        let gap = t1.ln_gdp(2500.0).unwrap() - asym.ln_gdp(2500.0).unwrap();
        assert!((gap - limit).abs() < 1e-9, "{gap} vs {limit}");
    }

    #[test]
    fn t2_published_values() {
        let traj = Trajectory::anchored(GrowthModel::LinearTime(t2_params()), 2014.0, 58.0).unwrap();
        assert!(rel(traj.gdp(2158.0).unwrap(), 380.0) < 0.03);
        assert!(rel(traj.gdp(2300.0).unwrap(), 62.0) < 0.05);
        let ln_c = traj.ln_constant().unwrap();
        assert!((ln_c - -414.4).abs() < 0.1, "{ln_c}");
        let f = traj.extrema().unwrap();
        assert!((f.t_max.unwrap() - 2158.0).abs() < 0.5);

        let flat = LinearRateParams::new(0.02, 0.0, RateDomain::Time).unwrap();
        let e = Trajectory::anchored(GrowthModel::LinearTime(flat), 2000.0, 10.0).unwrap();
        assert!(rel(e.gdp(2050.0).unwrap(), 10.0 * exp(1.0)) < 1e-13);
    }

    #[test]
    fn t3_published_values() {
        let traj = Trajectory::anchored(GrowthModel::LinearSize(t3_params()), 2014.0, 58.0).unwrap();
        assert!(rel(traj.gdp(2300.0).unwrap(), 216.0) < 0.02);
        let c = traj.constant().unwrap();
        assert!(rel(c, 1.1e29) < 0.05, "{c:e}");
        let limit = traj.extrema().unwrap().s_limit.unwrap();
        assert!((limit - 215.7).abs() < 0.05);
        assert!((traj.gdp(1e5).unwrap() - limit).abs() < 1e-9);

        let flat = LinearRateParams::new(0.02, 0.0, RateDomain::Size).unwrap();
        let e = Trajectory::from_constant(GrowthModel::LinearSize(flat), 4.0).unwrap();
        assert!(rel(e.gdp(2010.0).unwrap(), exp(0.02 * 2010.0) / 4.0) < 1e-12);
    }

    #[test]
    fn constants_round_trip() {
        let models = [
            GrowthModel::TimeSaturation(t1_params()),
            GrowthModel::LinearTime(t2_params()),
            GrowthModel::LinearSize(t3_params()),
            GrowthModel::Exponential { a: 39.4 },
        ];
        for m in models {
            let traj = Trajectory::anchored(m, 2014.0, 58.0).unwrap();
            let c = traj.constant().unwrap();
            let again = Trajectory::from_constant(m, c).unwrap();
            for t in [1990.0, 2014.0, 2100.0] {
                assert!(rel(again.gdp(t).unwrap(), traj.gdp(t).unwrap()) < 1e-9, "{m:?} {t}");
            }
        }
    }

    #[test]
    fn overflow_is_a_range_error() {
        let traj = Trajectory::anchored(GrowthModel::Exponential { a: 1.0 }, 0.0, 1.0).unwrap();
        assert!(matches!(traj.gdp(800.0), Err(Error::Range { .. })));
        assert!(traj.ln_gdp(800.0).is_ok());
    }

    #[test]
    fn t3_domain_from_above_the_limit() {
        // Started above a/|b| the trajectory declines and is undefined far
        // enough in the past.
        let traj = Trajectory::anchored(GrowthModel::LinearSize(t3_params()), 2014.0, 400.0).unwrap();
        let (lo, hi) = traj.domain();
        assert!(lo > f64::NEG_INFINITY && lo < 2014.0 && hi == f64::INFINITY);
        assert!(traj.gdp(lo - 1.0).is_err());
        assert!(traj.gdp(2100.0).unwrap() < 400.0);
    }

    #[test]
    fn extrema_missing_features() {
        let rising = LinearRateParams::new(0.01, 1e-5, RateDomain::Time).unwrap();
        let t = Trajectory::anchored(GrowthModel::LinearTime(rising), 2000.0, 1.0).unwrap();
        assert_eq!(t.extrema().unwrap().t_max, None);
        let t1 = Trajectory::anchored(GrowthModel::TimeSaturation(t1_params()), 2014.0, 58.0).unwrap();
        let f = t1.extrema().unwrap();
        assert!((f.t_min.unwrap() - 1951.3).abs() < 0.05);
        assert!((f.asymptotic_rate.unwrap() - 2.538e-2).abs() < 5e-6);
        let e = Trajectory::anchored(GrowthModel::Exponential { a: 2.0 }, 0.0, 1.0).unwrap();
        assert!(e.extrema().is_err());
    }

    #[test]
    fn ode_late_slope_approaches_inverse_a() {
        let sol = solve_size_ode(&size_params(), 58.0, 2014.0, 2500.0, DEFAULT_ODE_STEP).unwrap();
        let n = sol.points.len();
        assert_eq!(sol.points[n - 1].0, 2500.0);
        let slope = ln(sol.points[n - 1].1) - ln(sol.points[n - 2].1);
        assert!((0.0260..=0.0264).contains(&slope), "{slope}");
    }

    #[test]
    fn ode_with_zero_b_is_exact_exponential() {
        let p = SaturationRateParams::new(38.05, 0.0, 0.07927, RateDomain::Size).unwrap();
        let sol = solve_size_ode(&p, 58.0, 2014.0, 2300.0, DEFAULT_ODE_STEP).unwrap();
        for &(t, s) in &sol.points {
            let exact = 58.0 * exp((t - 2014.0) / 38.05);
            assert!(rel(s, exact) < 1e-10);
        }
    }

    #[test]
    fn ode_forward_backward() {
        let p = size_params();
        let fwd = solve_size_ode(&p, 58.0, 2014.0, 2114.5, 0.25).unwrap();
        let &(t_end, s_end) = fwd.points.last().unwrap();
        let back = solve_size_ode(&p, s_end, t_end, 2014.0, 0.25).unwrap();
        let &(t0, s0) = back.points.last().unwrap();
        assert_eq!(t0, 2014.0);
        assert!(rel(s0, 58.0) < 1e-8);
    }

    #[test]
    fn ode_domain_exit() {
        // Integrating backward drives S toward ln(b/a)/r ~ 3.75 where the
        // rate diverges.
        let p = size_params();
        assert!(solve_size_ode(&p, 58.0, 2014.0, 1500.0, 0.25).is_err());
        assert!(solve_size_ode(&p, 3.0, 2014.0, 2020.0, 0.25).is_err());
        assert!(solve_size_ode(&p, 58.0, 2014.0, 2020.0, 0.0).is_err());
    }

    #[test]
    fn series_partial_sums() {
        // Oracle: explicit partial sums of (-1)^{n+1}/(n n!) at x = 1.
        let mut oracle = 0.0;
        let mut fact = 1.0;
        for n in 1..=25 {
            fact *= n as f64;
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            oracle += sign / (n as f64 * fact);
        }
        let s = saturation_series(1.0).unwrap();
        assert!((s - oracle).abs() < 1e-15);
        assert!((s - 0.7966).abs() < 1e-4);
        assert_eq!(saturation_series(0.0).unwrap(), 0.0);
        assert!(matches!(saturation_series(31.0), Err(Error::SeriesGuard { .. })));
    }

    #[test]
    fn implicit_with_zero_b_is_logarithm() {
        let p = SaturationRateParams::new(38.05, 0.0, 0.07927, RateDomain::Size).unwrap();
        let c = 5.0;
        for s in [1.0, 58.0, 1e4] {
            assert!((implicit_time_of_size(&p, c, s).unwrap() - (38.05 * ln(s) - c)).abs() < 1e-12);
        }
    }

    #[test]
    fn implicit_guards() {
        let p = size_params();
        assert!(matches!(
            implicit_time_of_size(&p, 0.0, 400.0),
            Err(Error::SeriesGuard { .. })
        ));
        assert!(matches!(
            implicit_time_of_size(&p, 0.0, 2.0),
            Err(Error::Domain { .. })
        ));
    }
}
