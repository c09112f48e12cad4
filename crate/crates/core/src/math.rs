//! Thin wrappers over `libm` so the core builds without `std`.

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}

/// `ln 2`
pub(crate) const LN_2: f64 = core::f64::consts::LN_2;

/// Largest `|ln S|` accepted before a value is reported as out of range.
pub(crate) const LN_RANGE_LIMIT: f64 = 700.0;

pub(crate) fn checked_exp(ln_value: f64) -> crate::Result<f64> {
    if !ln_value.is_finite() || abs(ln_value) > LN_RANGE_LIMIT {
        return Err(crate::Error::Range { ln_value });
    }
    Ok(exp(ln_value))
}
