//! Pair-counting similarity between two crisp partitions.
//!
//! Counts follow this convention: `a` pairs are together in both partitions,
//! `b` apart in both, `c` together only in the first, `d` together only in
//! the second.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::CrispPartition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCounts {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl PairCounts {
    pub fn total(&self) -> u64 {
        self.a + self.b + self.c + self.d
    }

    /// Counts with the roles of the two partitions exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            c: self.d,
            d: self.c,
            ..*self
        }
    }
}

fn pairs(m: u64) -> u64 {
    m * m.saturating_sub(1) / 2
}

/// Exact pair counts from the contingency table, `O(n + k1 * k2)`.
pub fn pair_counts(p1: &CrispPartition, p2: &CrispPartition) -> Result<PairCounts> {
    if p1.n() != p2.n() {
        return Err(Error::LengthMismatch {
            left: p1.n(),
            right: p2.n(),
        });
    }
    let (k1, k2) = (p1.k(), p2.k());
    let mut table = vec![0u64; k1 * k2];
    for (&x, &y) in p1.assignment().iter().zip(p2.assignment()) {
        table[x * k2 + y] += 1;
    }
    let a: u64 = table.iter().map(|&c| pairs(c)).sum();
    let together_first: u64 = p1.sizes().iter().map(|&s| pairs(s as u64)).sum();
    let together_second: u64 = p2.sizes().iter().map(|&s| pairs(s as u64)).sum();
    let c = together_first - a;
    let d = together_second - a;
    let b = pairs(p1.n() as u64) - a - c - d;
    Ok(PairCounts { a, b, c, d })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SimilarityMeasure {
    Rand,
    #[serde(rename = "FM")]
    FowlkesMallows,
    #[serde(rename = "Jacc")]
    Jaccard,
    #[serde(rename = "ARI")]
    AdjustedRand,
}

impl SimilarityMeasure {
    pub const ALL: [SimilarityMeasure; 4] = [
        SimilarityMeasure::Rand,
        SimilarityMeasure::FowlkesMallows,
        SimilarityMeasure::Jaccard,
        SimilarityMeasure::AdjustedRand,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SimilarityMeasure::Rand => "Rand",
            SimilarityMeasure::FowlkesMallows => "FM",
            SimilarityMeasure::Jaccard => "Jacc",
            SimilarityMeasure::AdjustedRand => "ARI",
        }
    }

    pub fn evaluate(self, pc: &PairCounts) -> Result<f64> {
        match self {
            SimilarityMeasure::Rand => rand_index(pc),
            SimilarityMeasure::FowlkesMallows => fowlkes_mallows(pc),
            SimilarityMeasure::Jaccard => jaccard(pc),
            SimilarityMeasure::AdjustedRand => adjusted_rand(pc),
        }
    }
}

impl fmt::Display for SimilarityMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SimilarityMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SimilarityMeasure::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown similarity measure `{s}`")))
    }
}

fn guarded(measure: &'static str, num: f64, den: f64) -> Result<f64> {
    if den == 0.0 {
        return Err(Error::UndefinedSimilarity { measure });
    }
    Ok(num / den)
}

/// `(a + b) / (a + b + c + d)`.
pub fn rand_index(pc: &PairCounts) -> Result<f64> {
    guarded("Rand", (pc.a + pc.b) as f64, pc.total() as f64)
}

/// `a / sqrt((a + d)(a + c))`.
pub fn fowlkes_mallows(pc: &PairCounts) -> Result<f64> {
    let (a, c, d) = (pc.a as f64, pc.c as f64, pc.d as f64);
    guarded("FM", a, ((a + d) * (a + c)).sqrt())
}

/// `a / (a + c + d)`.
pub fn jaccard(pc: &PairCounts) -> Result<f64> {
    guarded("Jacc", pc.a as f64, (pc.a + pc.c + pc.d) as f64)
}

/// Pair-counting adjusted Rand index:
/// `(a - E) / (((a + d) + (a + c)) / 2 - E)` with `E = (a + d)(a + c) / M`.
pub fn adjusted_rand(pc: &PairCounts) -> Result<f64> {
    let (a, c, d) = (pc.a as f64, pc.c as f64, pc.d as f64);
    let total = pc.total() as f64;
    if total == 0.0 {
        return Err(Error::UndefinedSimilarity { measure: "ARI" });
    }
    let expected = (a + d) * (a + c) / total;
    guarded("ARI", a - expected, ((a + d) + (a + c)) / 2.0 - expected)
}
