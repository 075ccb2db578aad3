//! Cluster validity indexes.
//!
//! | index    | uses                       | better |
//! |----------|----------------------------|--------|
//! | PC       | memberships                | max    |
//! | PE       | memberships                | min    |
//! | P        | memberships                | max    |
//! | XB       | memberships, data, centers | min    |
//! | PBMF     | memberships, data, centers | max    |
//! | PBM_FVG  | memberships, data, centers | max    |
//! | OS       | crisp partition, centers   | min    |
//! | I        | crisp partition, densities | min    |

mod geometric;
mod jeffrey;
mod membership;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::density::Divergence;
use crate::error::{Error, Result};
use crate::partition::{harden, MembershipMatrix};

pub use geometric::{granulation_error, os, pbm_fvg, pbmf, xb, OVERLAP_THRESHOLD};
pub use jeffrey::{
    compactness_v, fit_cluster_models, index_i, index_i_crisp, separation_s, Separation,
};
pub use membership::{p_index, pc, pe};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CviIndex {
    #[serde(rename = "PC")]
    Pc,
    #[serde(rename = "PE")]
    Pe,
    #[serde(rename = "P")]
    P,
    #[serde(rename = "XB")]
    Xb,
    #[serde(rename = "PBMF")]
    Pbmf,
    #[serde(rename = "PBM_FVG")]
    PbmFvg,
    #[serde(rename = "OS")]
    Os,
    #[serde(rename = "I")]
    I,
}

impl CviIndex {
    /// Report column order.
    pub const ALL: [CviIndex; 8] = [
        CviIndex::Pc,
        CviIndex::Pe,
        CviIndex::P,
        CviIndex::Xb,
        CviIndex::Pbmf,
        CviIndex::PbmFvg,
        CviIndex::Os,
        CviIndex::I,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CviIndex::Pc => "PC",
            CviIndex::Pe => "PE",
            CviIndex::P => "P",
            CviIndex::Xb => "XB",
            CviIndex::Pbmf => "PBMF",
            CviIndex::PbmFvg => "PBM_FVG",
            CviIndex::Os => "OS",
            CviIndex::I => "I",
        }
    }

    pub fn direction(self) -> Direction {
        match self {
            CviIndex::Pe | CviIndex::Xb | CviIndex::Os | CviIndex::I => Direction::Minimize,
            CviIndex::Pc | CviIndex::P | CviIndex::Pbmf | CviIndex::PbmFvg => Direction::Maximize,
        }
    }
}

impl fmt::Display for CviIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CviIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CviIndex::ALL
            .into_iter()
            .find(|i| i.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown index `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Minimize,
    Maximize,
}

impl Direction {
    /// Key of the best defined value; ties keep the earliest candidate.
    /// `None` and NaN values never win.
    pub fn best<K: Copy>(self, candidates: impl IntoIterator<Item = (K, Option<f64>)>) -> Option<K> {
        let mut best: Option<(K, f64)> = None;
        for (key, value) in candidates {
            let Some(v) = value.filter(|v| !v.is_nan()) else {
                continue;
            };
            let better = match best {
                None => true,
                Some((_, b)) => match self {
                    Direction::Minimize => v < b,
                    Direction::Maximize => v > b,
                },
            };
            if better {
                best = Some((key, v));
            }
        }
        best.map(|(k, _)| k)
    }
}

/// Every index evaluated on one partition. `None` marks an index that is
/// undefined for this partition (its computation raised an error).
#[derive(Debug, Clone, PartialEq)]
pub struct CviReport {
    pub k: usize,
    values: BTreeMap<CviIndex, Option<f64>>,
}

impl CviReport {
    pub fn new(k: usize, values: BTreeMap<CviIndex, Option<f64>>) -> Self {
        Self { k, values }
    }

    pub fn get(&self, index: CviIndex) -> Option<f64> {
        self.values.get(&index).copied().flatten()
    }

    pub fn values(&self) -> &BTreeMap<CviIndex, Option<f64>> {
        &self.values
    }

    pub fn direction(index: CviIndex) -> Direction {
        index.direction()
    }
}

/// Evaluates all eight indexes on `m`. Failures are recorded per index.
pub fn evaluate_all(ds: &Dataset, m: &MembershipMatrix, backend: Divergence) -> Result<CviReport> {
    m.check_dataset(ds)?;
    let crisp = harden(m);
    let mut values = BTreeMap::new();
    for index in CviIndex::ALL {
        let value = match index {
            CviIndex::Pc => Ok(pc(m)),
            CviIndex::Pe => Ok(pe(m)),
            CviIndex::P => p_index(m),
            CviIndex::Xb => xb(ds, m),
            CviIndex::Pbmf => pbmf(ds, m),
            CviIndex::PbmFvg => pbm_fvg(ds, m),
            CviIndex::Os => os(ds, &crisp, m.centers()),
            CviIndex::I => index_i_crisp(ds, &crisp, m.centers(), backend),
        };
        values.insert(index, value.ok());
    }
    Ok(CviReport { k: m.k(), values })
}
