//! Growth-rate analysis of annual GDP series.
//!
//! The crate estimates empirical growth rates `R = (1/S) dS/dt`, fits
//! saturation and linear rate models to them, turns calibrated rate models
//! into GDP trajectories (closed forms, an RK4 solver and an implicit series
//! inversion for the size-dependent case) and reports economic stress factors.
//!
//! Everything here is `no_std` + `alloc`; file formats and the command line
//! live in the `growthcast` crate.

#![no_std]
#![deny(missing_debug_implementations)]

extern crate alloc;

mod error;
mod linalg;
mod math;

pub mod fitting;
pub mod models;
pub mod optimize;
pub mod rates;
pub mod stress;
pub mod timeseries;
pub mod trajectories;

pub use error::{Error, Result};
pub use fitting::{
    calibrate, fit_linear_rate, fit_saturation, ols_line, Anchor, LinearFit, LinearRateFit,
    SaturationFit,
};
pub use models::{
    asymptotic_rate, linearize_f, rate_linear, rate_size_saturation, rate_time_saturation,
    LinearRateParams, RateDomain, SaturationRateParams,
};
pub use rates::{direct_growth_rate, refined_growth_rate, RateMethod, RatePoint, RateSeries};
pub use stress::{
    projection_table, stress_factor, stress_factor_against, stress_increase,
    stress_increase_against, ProjectionCell, ProjectionRow,
    StressReference, DEFAULT_PROJECTION_YEARS,
};
pub use timeseries::{AnnualSeries, MIN_SERIES_LEN};
pub use trajectories::{
    implicit_constant, implicit_time_of_size, saturation_series, solve_size_ode,
    time_saturation_integral, GrowthModel,
    SampledTrajectory, Trajectory, TrajectoryFeatures, TrajectoryKind,
};
