//! JSON experiment configuration.
//!
//! ```json
//! {
//!   "fcm": { "k_range": [10, 20], "m": 2.0, "seed": 7 },
//!   "divergence": "gaussian",
//!   "runs": 100,
//!   "dataset": { "recipe": "s1" }
//! }
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bench::io::load_csv;
use crate::bench::mixture::{generate, recipe, MixtureSpec};
use crate::bench::sweep::KRange;
use crate::clustering::{FcmConfig, DEFAULT_FUZZIFIER, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::dataset::Dataset;
use crate::density::Divergence;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FcmSection {
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub k_range: Option<[usize; 2]>,
    #[serde(default = "default_m")]
    pub m: f64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default)]
    pub seed: u64,
}

fn default_m() -> f64 {
    DEFAULT_FUZZIFIER
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

fn default_max_iter() -> usize {
    DEFAULT_MAX_ITER
}

fn default_runs() -> usize {
    100
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum DataSource {
    Path(PathBuf),
    Mixture(MixtureSpec),
    /// A shipped recipe, generated with the config seed.
    Recipe(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub fcm: FcmSection,
    #[serde(default)]
    pub divergence: Divergence,
    #[serde(default = "default_runs")]
    pub runs: usize,
    pub dataset: DataSource,
}

impl ExperimentConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cfg: Self = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        match (self.fcm.k, self.fcm.k_range) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidConfig("give either fcm.k or fcm.k_range, not both".into()))
            }
            (None, None) => return Err(Error::InvalidConfig("fcm.k or fcm.k_range is required".into())),
            (Some(k), None) => self.fcm_config().with_k(k).validate()?,
            (None, Some([lo, hi])) => {
                KRange::new(lo, hi)?;
                self.fcm_config().with_k(lo).validate()?;
            }
        }
        if self.runs == 0 {
            return Err(Error::InvalidConfig("runs must be >= 1".into()));
        }
        Ok(())
    }

    /// FCM settings; `k` is the single k or the low end of the range.
    pub fn fcm_config(&self) -> FcmConfig {
        let k = self.fcm.k.or(self.fcm.k_range.map(|r| r[0])).unwrap_or(2);
        FcmConfig {
            k,
            m: self.fcm.m,
            max_iter: self.fcm.max_iter,
            tol: self.fcm.tol,
            seed: self.fcm.seed,
        }
    }

    /// Candidate cluster counts.
    pub fn k_values(&self) -> Vec<usize> {
        match (self.fcm.k, self.fcm.k_range) {
            (Some(k), _) => vec![k],
            (None, Some([lo, hi])) => (lo..=hi).collect(),
            (None, None) => Vec::new(),
        }
    }

    pub fn k_range(&self) -> Result<KRange> {
        let ks = self.k_values();
        match (ks.first(), ks.last()) {
            (Some(&lo), Some(&hi)) => KRange::new(lo, hi),
            _ => Err(Error::InvalidConfig("no cluster counts configured".into())),
        }
    }

    /// Loads or generates the dataset. Relative paths resolve against `base`.
    pub fn dataset(&self, base: &Path) -> Result<Dataset> {
        match &self.dataset {
            DataSource::Path(p) => load_csv(base.join(p)),
            DataSource::Mixture(spec) => generate(spec),
            DataSource::Recipe(name) => {
                let spec = recipe(name, self.fcm.seed)
                    .ok_or_else(|| Error::InvalidConfig(format!("unknown recipe `{name}`")))?;
                generate(&spec)
            }
        }
    }
}
