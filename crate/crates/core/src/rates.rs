//! Empirical growth rates `R = (1/S) dS/dt`.
//!
//! Two estimators are provided. [`direct_growth_rate`] uses finite
//! differences of the raw data and keeps every year-to-year fluctuation.
//! [`refined_growth_rate`] fits a moving least-squares polynomial to `ln S`
//! and differentiates it analytically, so an exponential input yields its
//! exact rate.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::least_squares;
use crate::math::ln;
use crate::timeseries::AnnualSeries;
use crate::{Error, Result};

/// Default moving-window length for [`refined_growth_rate`].
pub const DEFAULT_WINDOW: usize = 7;
/// Default polynomial degree for [`refined_growth_rate`].
pub const DEFAULT_DEGREE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateMethod {
    Direct,
    Refined { window: usize, degree: usize },
    /// Rates supplied by the caller, e.g. generated from a model.
    External,
}

/// One `(t, S, R)` triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint {
    /// Calendar year.
    pub t: f64,
    /// GDP, trillions of 2005 US$.
    pub s: f64,
    /// Growth rate, 1/year.
    pub r: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateSeries {
    points: Vec<RatePoint>,
    method: RateMethod,
}

impl RateSeries {
    /// Validates and wraps externally produced rate points.
    pub fn new(points: Vec<RatePoint>, method: RateMethod) -> Result<Self> {
        for p in &points {
            if !(p.t.is_finite() && p.s.is_finite() && p.r.is_finite()) {
                return Err(Error::NonFiniteValue { what: "rate series" });
            }
            if p.s <= 0.0 {
                return Err(Error::InvalidParams("rate series sizes must be positive"));
            }
        }
        if points.windows(2).any(|w| w[1].t <= w[0].t) {
            return Err(Error::InvalidParams("rate series times must be strictly increasing"));
        }
        Ok(Self { points, method })
    }

    pub fn points(&self) -> &[RatePoint] {
        &self.points
    }

    pub fn method(&self) -> RateMethod {
        self.method
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points with `start <= t <= end`.
    pub fn restrict(&self, start: f64, end: f64) -> Self {
        Self {
            points: self
                .points
                .iter()
                .copied()
                .filter(|p| p.t >= start && p.t <= end)
                .collect(),
            method: self.method,
        }
    }
}

/// Finite-difference growth rate: centred differences inside the series,
/// one-sided differences at both ends.
pub fn direct_growth_rate(series: &AnnualSeries) -> Result<RateSeries> {
    let pts = series.points();
    let n = pts.len();
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, found: n });
    }
    let rates = (0..n).map(|i| {
        let (year, s) = pts[i];
        let r = if i == 0 {
            (pts[1].1 - s) / s
        } else if i == n - 1 {
            (s - pts[n - 2].1) / s
        } else {
            (pts[i + 1].1 - pts[i - 1].1) / (2.0 * s)
        };
        RatePoint { t: f64::from(year), s, r }
    });
    Ok(RateSeries {
        points: rates.collect(),
        method: RateMethod::Direct,
    })
}

/// Moving least-squares estimate of `d ln S / dt`.
///
/// At every year a polynomial of `degree` is fitted to `ln S` over the
/// `window` points centred on it. Near the ends the window is truncated to
/// the points that exist, and the degree drops to at most one less than the
/// remaining point count (so the fit there may interpolate).
pub fn refined_growth_rate(series: &AnnualSeries, window: usize, degree: usize) -> Result<RateSeries> {
    let pts = series.points();
    let n = pts.len();
    if window.is_multiple_of(2) {
        return Err(Error::InvalidConfig("window must be odd"));
    }
    if window < 5 {
        return Err(Error::InvalidConfig("window must be at least 5"));
    }
    if window > n {
        return Err(Error::InvalidConfig("window longer than the series"));
    }
    if degree < 1 || degree + 2 > window {
        return Err(Error::InvalidConfig("degree must satisfy 1 <= degree <= window - 2"));
    }

    let half = window / 2;
    let half_width = half as f64;
    let ln_s: Vec<f64> = pts.iter().map(|p| ln(p.1)).collect();

    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let lo = i.saturating_sub(half);
        let hi = (i + half + 1).min(n);
        let rows = hi - lo;
        let cols = degree.min(rows - 1) + 1;
        let mut design = vec![0.0; rows * cols];
        let mut rhs = vec![0.0; rows];
        for (row, j) in (lo..hi).enumerate() {
            // Scaled offset keeps the Vandermonde matrix well conditioned.
            let x = f64::from(pts[j].0 - pts[i].0) / half_width;
            let mut power = 1.0;
            for c in 0..cols {
                design[c * rows + row] = power;
                power *= x;
            }
            rhs[row] = ln_s[j];
        }
        let coeffs = least_squares(design, rows, cols, rhs)
            .ok_or(Error::InvalidConfig("singular polynomial fit"))?;
        out.push(RatePoint {
            t: f64::from(pts[i].0),
            s: pts[i].1,
            r: coeffs[1] / half_width,
        });
    }
    Ok(RateSeries {
        points: out,
        method: RateMethod::Refined { window, degree },
    })
}
