//! Alternative methodology: over repeated runs, count how often each index
//! picks the candidate partition that is most similar to the ground truth.

use std::collections::BTreeMap;
use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clustering::{fcm, FcmConfig};
use crate::cvi::{evaluate_all, CviIndex};
use crate::dataset::Dataset;
use crate::density::Divergence;
use crate::error::{Error, Result};
use crate::partition::{harden, CrispPartition};
use crate::similarity::{pair_counts, SimilarityMeasure};

/// Seed of run `run` derived from `base` (SplitMix64 finaliser).
pub fn run_seed(base: u64, run: u64) -> u64 {
    let mut z = base ^ run.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// What happened in one run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOutcome {
    pub run: usize,
    pub seed: u64,
    /// Candidate most similar to the labels, per measure.
    pub reference_best: BTreeMap<SimilarityMeasure, Option<usize>>,
    /// Candidate each index selects.
    pub chosen: BTreeMap<CviIndex, Option<usize>>,
}

impl RunOutcome {
    pub fn success(&self, measure: SimilarityMeasure, index: CviIndex) -> bool {
        match (self.reference_best[&measure], self.chosen[&index]) {
            (Some(r), Some(c)) => r == c,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AltEvalResult {
    pub runs: usize,
    pub k_candidates: Vec<usize>,
    pub base_seed: u64,
    pub divergence: Divergence,
    /// Success count per measure and index, each in `[0, runs]`.
    pub counts: BTreeMap<SimilarityMeasure, BTreeMap<CviIndex, usize>>,
    pub per_run: Vec<RunOutcome>,
}

impl AltEvalResult {
    pub fn count(&self, measure: SimilarityMeasure, index: CviIndex) -> usize {
        self.counts[&measure][&index]
    }

    /// Counts restricted to a slice of runs.
    pub fn tally(&self, runs: Range<usize>) -> BTreeMap<SimilarityMeasure, BTreeMap<CviIndex, usize>> {
        tally(&self.per_run[runs])
    }
}

fn tally(outcomes: &[RunOutcome]) -> BTreeMap<SimilarityMeasure, BTreeMap<CviIndex, usize>> {
    SimilarityMeasure::ALL
        .iter()
        .map(|&m| {
            let row = CviIndex::ALL
                .iter()
                .map(|&i| (i, outcomes.iter().filter(|o| o.success(m, i)).count()))
                .collect();
            (m, row)
        })
        .collect()
}

struct Candidate {
    k: usize,
    partition: CrispPartition,
    values: BTreeMap<CviIndex, Option<f64>>,
}

fn first_max(scores: impl IntoIterator<Item = (usize, Option<f64>)>) -> Option<usize> {
    crate::cvi::Direction::Maximize.best(scores)
}

fn one_run(
    ds: &Dataset,
    truth: &CrispPartition,
    ks: &[usize],
    cfg: &FcmConfig,
    divergence: Divergence,
    run: usize,
    seed: u64,
) -> RunOutcome {
    let candidates: Vec<Candidate> = ks
        .iter()
        .filter_map(|&k| {
            let r = fcm(ds, &cfg.with_k(k).with_seed(seed)).ok()?;
            let report = evaluate_all(ds, &r.membership, divergence).ok()?;
            Some(Candidate {
                k,
                partition: harden(&r.membership),
                values: report.values().clone(),
            })
        })
        .collect();
    let reference_best = SimilarityMeasure::ALL
        .iter()
        .map(|&m| {
            let scores = candidates.iter().map(|c| {
                let s = pair_counts(&c.partition, truth).and_then(|pc| m.evaluate(&pc));
                (c.k, s.ok())
            });
            (m, first_max(scores))
        })
        .collect();
    let chosen = CviIndex::ALL
        .iter()
        .map(|&i| {
            let values = candidates.iter().map(|c| (c.k, c.values[&i]));
            (i, i.direction().best(values))
        })
        .collect();
    RunOutcome {
        run,
        seed,
        reference_best,
        chosen,
    }
}

/// For `runs` runs, clusters `ds` at every candidate k with a per-run seed
/// derived from `fcm_cfg.seed`, then scores each index once per measure
/// whenever its chosen k is the reference-best k. Ties go to the smaller k.
pub fn alt_eval(
    ds: &Dataset,
    k_candidates: &[usize],
    runs: usize,
    fcm_cfg: &FcmConfig,
    divergence: Divergence,
) -> Result<AltEvalResult> {
    let truth = match ds.labels() {
        Some(_) => CrispPartition::from_labels(ds)?,
        None => return Err(Error::MissingLabels(ds.name().to_string())),
    };
    if runs == 0 {
        return Err(Error::InvalidConfig("runs must be >= 1".into()));
    }
    let mut ks = k_candidates.to_vec();
    ks.sort_unstable();
    ks.dedup();
    if ks.is_empty() || ks[0] == 0 || *ks.last().unwrap() > ds.n() {
        return Err(Error::InvalidConfig(format!(
            "k candidates {k_candidates:?} must be non-empty and lie in [1, n = {}]",
            ds.n()
        )));
    }
    fcm_cfg.with_k(ks[0]).validate()?;
    let per_run: Vec<RunOutcome> = (0..runs)
        .into_par_iter()
        .map(|r| {
            let seed = run_seed(fcm_cfg.seed, r as u64);
            one_run(ds, &truth, &ks, fcm_cfg, divergence, r, seed)
        })
        .collect();
    Ok(AltEvalResult {
        runs,
        k_candidates: ks,
        base_seed: fcm_cfg.seed,
        divergence,
        counts: tally(&per_run),
        per_run,
    })
}
