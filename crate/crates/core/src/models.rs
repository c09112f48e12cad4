//! Parametric growth-rate models.
//!
//! Two families are supported, each as a function of time or of size:
//!
//! * saturation: `R(x) = 1 / (a - b e^{-r x})`, which tends to `1/a`;
//! * linear: `R(x) = a + b x`.
//!
//! The saturation `b` can be astronomically large when `x` is a calendar
//! year (of order `1e42`), so it is stored as `ln b` and every `b e^{-r x}`
//! is evaluated as `exp(ln b - r x)`.

use alloc::vec::Vec;

use crate::math::{exp, ln, LN_2};
use crate::rates::RateSeries;
use crate::{Error, Result};

/// Independent variable of a rate model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RateDomain {
    /// Calendar year.
    Time,
    /// GDP in trillions of 2005 US$.
    Size,
}

impl RateDomain {
    pub fn name(self) -> &'static str {
        match self {
            RateDomain::Time => "time",
            RateDomain::Size => "size",
        }
    }

    /// Picks `t` or `S` from a rate point.
    pub fn abscissa(self, t: f64, s: f64) -> f64 {
        match self {
            RateDomain::Time => t,
            RateDomain::Size => s,
        }
    }
}

/// Parameters of `R(x) = 1 / (a - b e^{-r x})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaturationRateParams {
    a: f64,
    ln_b: f64,
    r: f64,
    domain: RateDomain,
}

impl SaturationRateParams {
    /// `b = 0` is accepted and gives the constant rate `1/a`.
    pub fn new(a: f64, b: f64, r: f64, domain: RateDomain) -> Result<Self> {
        if !(b >= 0.0) || !b.is_finite() {
            return Err(Error::InvalidParams("saturation b must be finite and >= 0"));
        }
        let ln_b = if b == 0.0 { f64::NEG_INFINITY } else { ln(b) };
        Self::from_ln_b(a, ln_b, r, domain)
    }

    /// Same as [`new`](Self::new) with `b` given as `ln b` (`-inf` for `b = 0`).
    pub fn from_ln_b(a: f64, ln_b: f64, r: f64, domain: RateDomain) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::InvalidParams("saturation a must be finite and > 0"));
        }
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::InvalidParams("saturation r must be finite and >= 0"));
        }
        if ln_b.is_nan() || ln_b == f64::INFINITY {
            return Err(Error::InvalidParams("saturation ln b must be < +inf"));
        }
        Ok(Self { a, ln_b, r, domain })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        exp(self.ln_b)
    }

    pub fn ln_b(&self) -> f64 {
        self.ln_b
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn domain(&self) -> RateDomain {
        self.domain
    }

    /// True when the model reduces to the constant rate `1/a`.
    pub fn is_exponential(&self) -> bool {
        self.ln_b == f64::NEG_INFINITY
    }

    /// `b e^{-r x}`, computed in log space.
    pub fn decay(&self, x: f64) -> f64 {
        if self.is_exponential() {
            0.0
        } else {
            exp(self.ln_b - self.r * x)
        }
    }

    /// `a - b e^{-r x}`: the reciprocal of the rate.
    pub fn denominator(&self, x: f64) -> f64 {
        self.a - self.decay(x)
    }

    /// Smallest `x` at which the model is defined, `ln(b/a)/r`, or `None`
    /// if it is defined everywhere.
    pub fn lower_bound(&self) -> Option<f64> {
        if self.is_exponential() || self.r == 0.0 {
            return None;
        }
        Some((self.ln_b - ln(self.a)) / self.r)
    }

    /// Rate at `x` without checking which domain `x` belongs to.
    pub fn rate_at(&self, x: f64) -> Result<f64> {
        let d = self.denominator(x);
        if !(d > 0.0) {
            return Err(Error::Domain {
                what: "saturation rate (a - b e^{-rx} <= 0)",
                at: x,
            });
        }
        Ok(1.0 / d)
    }

    /// Limit rate `1/a` and the doubling time `a ln 2` of that rate.
    pub fn asymptotic_rate(&self) -> (f64, f64) {
        (1.0 / self.a, self.a * LN_2)
    }
}

/// Parameters of `R(x) = a + b x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearRateParams {
    pub a: f64,
    pub b: f64,
    pub domain: RateDomain,
}

impl LinearRateParams {
    pub fn new(a: f64, b: f64, domain: RateDomain) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParams("linear rate parameters must be finite"));
        }
        Ok(Self { a, b, domain })
    }

    pub fn rate_at(&self, x: f64) -> f64 {
        self.a + self.b * x
    }

    /// The root `a/|b|` of the rate when it is decreasing.
    pub fn zero_crossing(&self) -> Option<f64> {
        (self.b < 0.0).then(|| self.a / -self.b)
    }
}

/// Time-saturation rate `1/(a - b e^{-rt})`.
pub fn rate_time_saturation(p: &SaturationRateParams, t: f64) -> Result<f64> {
    if p.domain != RateDomain::Time {
        return Err(Error::InvalidParams("expected time-domain saturation parameters"));
    }
    p.rate_at(t)
}

/// Size-saturation rate `1/(a - b e^{-rS})`.
pub fn rate_size_saturation(p: &SaturationRateParams, s: f64) -> Result<f64> {
    if p.domain != RateDomain::Size {
        return Err(Error::InvalidParams("expected size-domain saturation parameters"));
    }
    p.rate_at(s)
}

/// `a + b x`, with `x` a year or a GDP level per `p.domain`.
pub fn rate_linear(p: &LinearRateParams, x: f64) -> f64 {
    p.rate_at(x)
}

/// `(1/a, a ln 2)`.
pub fn asymptotic_rate(a: f64) -> Result<(f64, f64)> {
    if !(a > 0.0) {
        return Err(Error::InvalidParams("asymptote parameter a must be > 0"));
    }
    Ok((1.0 / a, a * LN_2))
}

/// Maps each rate point to `(x, ln F)` with `F = a - 1/R`.
///
/// For saturation-rate data and the right `a`, `ln F = ln b - r x` is a
/// straight line.
pub fn linearize_f(a: f64, rates: &RateSeries, domain: RateDomain) -> Result<Vec<(f64, f64)>> {
    rates
        .points()
        .iter()
        .enumerate()
        .map(|(index, p)| {
            let f = a - 1.0 / p.r;
            if !(f > 0.0) || !f.is_finite() {
                return Err(Error::InfeasibleLinearization { index, f });
            }
            Ok((domain.abscissa(p.t, p.s), ln(f)))
        })
        .collect()
}
