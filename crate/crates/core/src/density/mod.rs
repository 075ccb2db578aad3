//! Per-cluster density models and the Jeffrey divergence between them.

mod gaussian;
mod kde;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use gaussian::{fit_gaussian, jd_gaussian, GaussianModel};
pub use kde::{fit_kde, jd_kde, KdeModel, DEFAULT_DENSITY_FLOOR, VARIANCE_FLOOR};

/// Which density estimator backs the separation measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Divergence {
    #[default]
    Gaussian,
    Kde,
}

impl Divergence {
    pub fn as_str(self) -> &'static str {
        match self {
            Divergence::Gaussian => "gaussian",
            Divergence::Kde => "kde",
        }
    }
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Divergence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gaussian" => Ok(Divergence::Gaussian),
            "kde" => Ok(Divergence::Kde),
            other => Err(Error::InvalidConfig(format!(
                "unknown divergence backend `{other}` (expected gaussian or kde)"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub enum ClusterModel {
    Gaussian(GaussianModel),
    Kde(KdeModel),
}

impl ClusterModel {
    pub fn fit(points: &[&[f64]], backend: Divergence) -> Result<Self> {
        Ok(match backend {
            Divergence::Gaussian => ClusterModel::Gaussian(fit_gaussian(points)?),
            Divergence::Kde => ClusterModel::Kde(fit_kde(points)?),
        })
    }

    pub fn backend(&self) -> Divergence {
        match self {
            ClusterModel::Gaussian(_) => Divergence::Gaussian,
            ClusterModel::Kde(_) => Divergence::Kde,
        }
    }

    /// Jeffrey divergence to `other`; both models must use the same backend.
    pub fn jeffrey(&self, other: &ClusterModel) -> Result<f64> {
        match (self, other) {
            (ClusterModel::Gaussian(a), ClusterModel::Gaussian(b)) => jd_gaussian(a, b),
            (ClusterModel::Kde(a), ClusterModel::Kde(b)) => jd_kde(a, b, DEFAULT_DENSITY_FLOOR),
            _ => Err(Error::BackendMismatch),
        }
    }
}
