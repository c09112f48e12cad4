//! Economic stress factor `sigma = GDP(t) / GDP(t0)` and projection tables.

use alloc::vec::Vec;

use crate::trajectories::{Trajectory, TrajectoryKind};
use crate::{Error, Result};

/// Years reported by default, with 2000 as reference.
pub const DEFAULT_PROJECTION_YEARS: [i32; 9] = [2000, 2014, 2050, 2100, 2150, 2158, 2200, 2250, 2300];

/// Denominator of the stress factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StressReference {
    /// Each trajectory's own value at this year, so `sigma(year) = 1`.
    Model { year: f64 },
    /// An observed GDP, shared by every trajectory.
    Observed { year: f64, gdp: f64 },
}

impl StressReference {
    pub fn year(&self) -> f64 {
        match *self {
            StressReference::Model { year } | StressReference::Observed { year, .. } => year,
        }
    }

    fn denominator(&self, traj: &Trajectory) -> Result<f64> {
        match *self {
            StressReference::Model { year } => traj.gdp(year),
            StressReference::Observed { gdp, .. } => {
                if gdp > 0.0 && gdp.is_finite() {
                    Ok(gdp)
                } else {
                    Err(Error::InvalidParams("reference GDP must be positive"))
                }
            }
        }
    }
}

/// `S(t) / S(t_ref)`.
pub fn stress_factor(traj: &Trajectory, t: f64, t_ref: f64) -> Result<f64> {
    stress_factor_against(traj, t, &StressReference::Model { year: t_ref })
}

pub fn stress_factor_against(traj: &Trajectory, t: f64, reference: &StressReference) -> Result<f64> {
    Ok(traj.gdp(t)? / reference.denominator(traj)?)
}

/// Backward one-year change of sigma, in percent of the reference GDP:
/// `100 (sigma(t) - sigma(t-1))`.
pub fn stress_increase(traj: &Trajectory, t: f64, t_ref: f64) -> Result<f64> {
    stress_increase_against(traj, t, &StressReference::Model { year: t_ref })
}

pub fn stress_increase_against(traj: &Trajectory, t: f64, reference: &StressReference) -> Result<f64> {
    let denom = reference.denominator(traj)?;
    Ok(100.0 * (traj.gdp(t)? - traj.gdp(t - 1.0)?) / denom)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionCell {
    pub kind: TrajectoryKind,
    /// GDP, trillions of 2005 US$.
    pub s: f64,
    pub sigma: f64,
    /// Percent per year.
    pub dsigma_pct: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionRow {
    pub year: i32,
    /// One cell per trajectory, in the order given.
    pub cells: Vec<ProjectionCell>,
}

/// One row per year with `S`, sigma and its annual increase for every
/// trajectory. Rows keep the order of `years`.
pub fn projection_table(
    trajectories: &[Trajectory],
    years: &[i32],
    reference: &StressReference,
) -> Result<Vec<ProjectionRow>> {
    let denominators: Vec<f64> = trajectories
        .iter()
        .map(|t| reference.denominator(t))
        .collect::<Result<_>>()?;
    years
        .iter()
        .map(|&year| {
            let t = f64::from(year);
            let cells = trajectories
                .iter()
                .zip(&denominators)
                .map(|(traj, &denom)| {
                    let s = traj.gdp(t)?;
                    let prev = traj.gdp(t - 1.0)?;
                    Ok(ProjectionCell {
                        kind: traj.kind(),
                        s,
                        sigma: s / denom,
                        dsigma_pct: 100.0 * (s - prev) / denom,
                    })
                })
                .collect::<Result<_>>()?;
            Ok(ProjectionRow { year, cells })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{LinearRateParams, RateDomain};
    use crate::trajectories::GrowthModel;

    #[test]
    fn reference_year_has_unit_sigma() {
        let p = LinearRateParams::new(3.539e-2, -1.641e-4, RateDomain::Size).unwrap();
        let traj = Trajectory::anchored(GrowthModel::LinearSize(p), 2014.0, 58.0).unwrap();
        assert_eq!(stress_factor(&traj, 2000.0, 2000.0).unwrap(), 1.0);
        let rows = projection_table(&[traj], &DEFAULT_PROJECTION_YEARS, &StressReference::Model { year: 2000.0 })
            .unwrap();
        assert_eq!(rows.len(), 9);
        assert_eq!(rows[0].cells[0].sigma, 1.0);
    }

    #[test]
    fn flat_trajectory_has_no_increase() {
        let p = LinearRateParams::new(0.0, 0.0, RateDomain::Time).unwrap();
        let traj = Trajectory::anchored(GrowthModel::LinearTime(p), 2000.0, 41.0).unwrap();
        assert_eq!(stress_increase(&traj, 2050.0, 2000.0).unwrap(), 0.0);
    }

    #[test]
    fn observed_reference() {
        let traj = Trajectory::anchored(GrowthModel::Exponential { a: 30.0 }, 2014.0, 58.0).unwrap();
        let obs = StressReference::Observed { year: 2000.0, gdp: 41.0 };
        assert!((stress_factor_against(&traj, 2014.0, &obs).unwrap() - 58.0 / 41.0).abs() < 1e-15);
        let bad = StressReference::Observed { year: 2000.0, gdp: 0.0 };
        assert!(stress_factor_against(&traj, 2014.0, &bad).is_err());
    }

    #[test]
    fn domain_errors_propagate() {
        let p = crate::models::SaturationRateParams::new(3.940e1, 3.787e42, 4.836e-2, RateDomain::Time).unwrap();
        let traj = Trajectory::anchored(GrowthModel::TimeSaturation(p), 2014.0, 58.0).unwrap();
        assert!(stress_factor(&traj, 2014.0, 1900.0).is_err());
        assert!(projection_table(&[traj], &[1940], &StressReference::Model { year: 2000.0 }).is_err());
    }
}
