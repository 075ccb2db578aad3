//! Classic methodology: cluster at every k of a range and let each index
//! pick its favourite k.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clustering::{fcm, FcmConfig};
use crate::cvi::{evaluate_all, CviIndex, CviReport, Direction};
use crate::dataset::Dataset;
use crate::density::Divergence;
use crate::error::{Error, Result};

/// Clustering seeds used when a sweep is repeated over seeds.
pub const DEFAULT_SEEDS: [u64; 10] = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9];

/// Inclusive range of cluster counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KRange {
    pub min: usize,
    pub max: usize,
}

impl KRange {
    pub fn new(min: usize, max: usize) -> Result<Self> {
        if min < 2 || max < min {
            return Err(Error::InvalidConfig(format!(
                "k range [{min}, {max}] must satisfy 2 <= k_min <= k_max"
            )));
        }
        Ok(Self { min, max })
    }

    pub fn values(&self) -> impl Iterator<Item = usize> {
        self.min..=self.max
    }

    pub fn len(&self) -> usize {
        self.max - self.min + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, k: usize) -> bool {
        (self.min..=self.max).contains(&k)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub k_range: KRange,
    /// One report per k, in increasing k.
    pub per_k: Vec<CviReport>,
    /// `None` when the index is undefined at every k.
    pub best_k: BTreeMap<CviIndex, Option<usize>>,
    pub fcm: FcmConfig,
    pub divergence: Divergence,
}

impl SweepResult {
    pub fn report(&self, k: usize) -> Option<&CviReport> {
        self.per_k.iter().find(|r| r.k == k)
    }

    /// Values of one index along the sweep.
    pub fn curve(&self, index: CviIndex) -> Vec<(usize, Option<f64>)> {
        self.per_k.iter().map(|r| (r.k, r.get(index))).collect()
    }
}

/// Best k for `index` when it is read in `direction`.
pub fn select_k(per_k: &[CviReport], index: CviIndex, direction: Direction) -> Option<usize> {
    direction.best(per_k.iter().map(|r| (r.k, r.get(index))))
}

fn undefined_report(k: usize) -> CviReport {
    CviReport::new(k, CviIndex::ALL.iter().map(|&i| (i, None)).collect())
}

/// Runs FCM with `fcm_cfg` (its `k` is overridden) at every k of the range
/// and evaluates every index. The same seed is used at every k. A k at which
/// clustering fails yields an all-undefined report.
pub fn classic_sweep(
    ds: &Dataset,
    k_range: KRange,
    fcm_cfg: &FcmConfig,
    divergence: Divergence,
) -> Result<SweepResult> {
    if k_range.max > ds.n() {
        return Err(Error::InvalidConfig(format!(
            "k_max = {} exceeds n = {}",
            k_range.max,
            ds.n()
        )));
    }
    fcm_cfg.with_k(k_range.min).validate()?;
    let ks: Vec<usize> = k_range.values().collect();
    let per_k: Vec<CviReport> = ks
        .par_iter()
        .map(|&k| {
            fcm(ds, &fcm_cfg.with_k(k))
                .and_then(|r| evaluate_all(ds, &r.membership, divergence))
                .unwrap_or_else(|_| undefined_report(k))
        })
        .collect();
    let best_k = CviIndex::ALL
        .iter()
        .map(|&i| (i, select_k(&per_k, i, i.direction())))
        .collect();
    Ok(SweepResult {
        k_range,
        per_k,
        best_k,
        fcm: *fcm_cfg,
        divergence,
    })
}
