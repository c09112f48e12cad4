//! JSON parameter files holding already-fitted rate models, so projections
//! can be reproduced without refitting data.

use std::path::Path;

use growthcast_core::{
    GrowthModel, LinearRateParams, RateDomain, SaturationRateParams, StressReference, TrajectoryKind,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ParamsError {
    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: {what}: {source}")]
    Model {
        path: String,
        what: &'static str,
        #[source]
        source: growthcast_core::Error,
    },
    #[error("{path}: no `{what}` entry")]
    Missing { path: String, what: &'static str },
}

/// One rate model, tagged by `model`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelSpec {
    /// `R = 1/(a - b e^{-rt})`.
    SaturationTime { a: f64, b: f64, r: f64 },
    /// `R = 1/(a - b e^{-rS})`.
    SaturationSize { a: f64, b: f64, r: f64 },
    /// `R = a + b t`.
    LinearTime { a: f64, b: f64 },
    /// `R = a + b S`.
    LinearSize { a: f64, b: f64 },
    /// `R = 1/a`.
    Exponential { a: f64 },
}

impl ModelSpec {
    pub fn to_model(self) -> growthcast_core::Result<GrowthModel> {
        Ok(match self {
            ModelSpec::SaturationTime { a, b, r } => {
                GrowthModel::TimeSaturation(SaturationRateParams::new(a, b, r, RateDomain::Time)?)
            }
            ModelSpec::SaturationSize { a, b, r } => {
                GrowthModel::SizeSaturation(SaturationRateParams::new(a, b, r, RateDomain::Size)?)
            }
            ModelSpec::LinearTime { a, b } => GrowthModel::LinearTime(LinearRateParams::new(a, b, RateDomain::Time)?),
            ModelSpec::LinearSize { a, b } => GrowthModel::LinearSize(LinearRateParams::new(a, b, RateDomain::Size)?),
            ModelSpec::Exponential { a } => {
                if !(a > 0.0 && a.is_finite()) {
                    return Err(growthcast_core::Error::InvalidParams("exponential needs a > 0"));
                }
                GrowthModel::Exponential { a }
            }
        })
    }

    pub fn from_model(model: &GrowthModel) -> Self {
        match *model {
            GrowthModel::TimeSaturation(p) => ModelSpec::SaturationTime { a: p.a(), b: p.b(), r: p.r() },
            GrowthModel::SizeSaturation(p) => ModelSpec::SaturationSize { a: p.a(), b: p.b(), r: p.r() },
            GrowthModel::LinearTime(p) => ModelSpec::LinearTime { a: p.a, b: p.b },
            GrowthModel::LinearSize(p) => ModelSpec::LinearSize { a: p.a, b: p.b },
            GrowthModel::Exponential { a } => ModelSpec::Exponential { a },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnchorSpec {
    pub year: i32,
    pub gdp: f64,
}

/// Stress-factor denominator: the model's own value at `year`, or the
/// observed `gdp` when given.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceSpec {
    pub year: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gdp: Option<f64>,
}

impl ReferenceSpec {
    pub fn to_reference(self) -> StressReference {
        let year = f64::from(self.year);
        match self.gdp {
            Some(gdp) => StressReference::Observed { year, gdp },
            None => StressReference::Model { year },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t1: Option<ModelSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t2: Option<ModelSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t3: Option<ModelSpec>,
    /// Size-dependent saturation model, solved numerically.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<ModelSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<AnchorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<ReferenceSpec>,
    /// Integration constants as printed next to the parameters; kept for
    /// comparison only, projections are anchored.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_constants: Option<std::collections::BTreeMap<String, f64>>,
}

/// Models of a parameter file, validated and keyed by trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSet {
    pub t1: Option<GrowthModel>,
    pub t2: Option<GrowthModel>,
    pub t3: Option<GrowthModel>,
    pub size: Option<GrowthModel>,
}

impl ModelSet {
    pub fn get(&self, kind: TrajectoryKind) -> Option<GrowthModel> {
        match kind {
            TrajectoryKind::T1 => self.t1,
            TrajectoryKind::T2 => self.t2,
            TrajectoryKind::T3 => self.t3,
            TrajectoryKind::NumericSizeOde => self.size,
            TrajectoryKind::AsymptoticExp => None,
        }
    }
}

impl ParamsFile {
    pub fn parse(text: &str, path: &str) -> Result<Self, ParamsError> {
        serde_json::from_str(text).map_err(|source| ParamsError::Json { path: path.to_owned(), source })
    }

    pub fn read(path: &Path) -> Result<Self, crate::CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| crate::CliError::Read {
            path: path.to_owned(),
            source,
        })?;
        Ok(Self::parse(&text, &path.display().to_string())?)
    }

    /// Converts every entry, checking that each slot holds the right kind.
    pub fn models(&self, path: &str) -> Result<ModelSet, ParamsError> {
        let slot = |spec: Option<ModelSpec>, what: &'static str, kind: TrajectoryKind| {
            spec.map(|s| {
                let model = s.to_model().map_err(|source| ParamsError::Model {
                    path: path.to_owned(),
                    what,
                    source,
                })?;
                if model.kind() != kind {
                    return Err(ParamsError::Model {
                        path: path.to_owned(),
                        what,
                        source: growthcast_core::Error::InvalidParams("wrong model for this entry"),
                    });
                }
                Ok(model)
            })
            .transpose()
        };
        Ok(ModelSet {
            t1: slot(self.t1, "t1", TrajectoryKind::T1)?,
            t2: slot(self.t2, "t2", TrajectoryKind::T2)?,
            t3: slot(self.t3, "t3", TrajectoryKind::T3)?,
            size: slot(self.size, "size", TrajectoryKind::NumericSizeOde)?,
        })
    }
}
