//! Validated annual GDP observations.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Minimum number of annual points needed for rate estimation.
pub const MIN_SERIES_LEN: usize = 5;

/// Annual GDP observations in trillions of constant 2005 US$.
///
/// Years are consecutive integers with no gaps or repeats, every value is
/// strictly positive and there are at least [`MIN_SERIES_LEN`] points.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnualSeries {
    points: Vec<(i32, f64)>,
}

impl AnnualSeries {
    /// Builds a series from `(year, gdp)` pairs in any order.
    pub fn new(mut points: Vec<(i32, f64)>) -> Result<Self> {
        for &(year, gdp) in &points {
            if !gdp.is_finite() {
                return Err(Error::NonFiniteValue { what: "gdp" });
            }
            if gdp <= 0.0 {
                return Err(Error::NonPositiveGdp { year, value: gdp });
            }
        }
        points.sort_by_key(|&(year, _)| year);
        for pair in points.windows(2) {
            let (prev, next) = (pair[0].0, pair[1].0);
            if prev == next {
                return Err(Error::DuplicateYear(prev));
            }
            if next - prev != 1 {
                return Err(Error::YearGap { after: prev, next });
            }
        }
        if points.len() < MIN_SERIES_LEN {
            return Err(Error::TooFewPoints {
                needed: MIN_SERIES_LEN,
                found: points.len(),
            });
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[(i32, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first_year(&self) -> i32 {
        self.points[0].0
    }

    pub fn last_year(&self) -> i32 {
        self.points[self.points.len() - 1].0
    }

    pub fn years(&self) -> impl Iterator<Item = i32> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.1)
    }

    /// Observed GDP for `year`, if present.
    pub fn get(&self, year: i32) -> Option<f64> {
        let idx = year.checked_sub(self.first_year())?;
        self.points.get(usize::try_from(idx).ok()?).map(|p| p.1)
    }

    /// Restricts the series to `start..=end`.
    pub fn slice_years(&self, start: i32, end: i32) -> Result<Self> {
        if start >= end {
            return Err(Error::InvalidConfig("window start must precede its end"));
        }
        let points: Vec<_> = self
            .points
            .iter()
            .copied()
            .filter(|&(year, _)| year >= start && year <= end)
            .collect();
        if points.is_empty() {
            return Err(Error::EmptyWindow { start, end });
        }
        if points.len() < MIN_SERIES_LEN {
            return Err(Error::TooFewPoints {
                needed: MIN_SERIES_LEN,
                found: points.len(),
            });
        }
        Ok(Self { points })
    }
}
