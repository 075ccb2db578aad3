//! K-means and fuzzy C-means with seeded initialization.
//!
//! Both algorithms start from `k` distinct dataset points drawn uniformly
//! without replacement, so a fixed seed gives bit-identical results.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dataset::{sq_dist, Dataset};
use crate::error::{Error, Result};
use crate::partition::{CrispPartition, MembershipMatrix};

pub const DEFAULT_FUZZIFIER: f64 = 2.0;
pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_MAX_ITER: usize = 300;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FcmConfig {
    pub k: usize,
    pub m: f64,
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
}

impl FcmConfig {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            m: DEFAULT_FUZZIFIER,
            max_iter: DEFAULT_MAX_ITER,
            tol: DEFAULT_TOL,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_fuzzifier(mut self, m: f64) -> Self {
        self.m = m;
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidConfig("k must be >= 1".into()));
        }
        if !(self.m > 1.0 && self.m.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "fuzzifier m must be > 1, got {}",
                self.m
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be >= 1".into()));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "tol must be > 0, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct FcmResult {
    pub membership: MembershipMatrix,
    /// Fuzzy objective of `membership` and its centers.
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Objective after every iteration, ending with `objective`.
    pub history: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct KMeansResult {
    pub partition: CrispPartition,
    /// Row-major `k x d`.
    pub centers: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
    pub history: Vec<f64>,
}

fn initial_centers(ds: &Dataset, k: usize, seed: u64) -> Result<Vec<f64>> {
    if k == 0 || k > ds.n() {
        return Err(Error::InvalidConfig(format!(
            "k = {k} must lie in [1, n = {}]",
            ds.n()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = index::sample(&mut rng, ds.n(), k);
    let mut centers = Vec::with_capacity(k * ds.dim());
    for j in picks.iter() {
        centers.extend_from_slice(ds.point(j));
    }
    Ok(centers)
}

fn nearest(point: &[f64], centers: &[f64], d: usize) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (i, c) in centers.chunks_exact(d).enumerate() {
        let dd = sq_dist(point, c);
        if dd < best.1 {
            best = (i, dd);
        }
    }
    best
}

fn assign_nearest(ds: &Dataset, centers: &[f64]) -> Vec<usize> {
    ds.points()
        .map(|p| nearest(p, centers, ds.dim()).0)
        .collect()
}

/// Sum of squared distances from each point to its assigned center.
pub fn kmeans_objective(ds: &Dataset, assignment: &[usize], centers: &[f64]) -> f64 {
    let d = ds.dim();
    ds.points()
        .zip(assignment)
        .map(|(p, &c)| sq_dist(p, &centers[c * d..(c + 1) * d]))
        .sum()
}

/// Recomputes centers as cluster means. Empty clusters are re-seeded at the
/// point farthest from its current center; each point is used at most once.
fn update_means(ds: &Dataset, assignment: &[usize], centers: &mut [f64], k: usize) {
    let d = ds.dim();
    let mut sums = vec![0.0; k * d];
    let mut counts = vec![0usize; k];
    for (p, &c) in ds.points().zip(assignment) {
        counts[c] += 1;
        for (s, x) in sums[c * d..(c + 1) * d].iter_mut().zip(p) {
            *s += x;
        }
    }
    let mut taken = vec![false; ds.n()];
    for i in 0..k {
        let row = &mut centers[i * d..(i + 1) * d];
        if counts[i] > 0 {
            let inv = 1.0 / counts[i] as f64;
            for (c, s) in row.iter_mut().zip(&sums[i * d..(i + 1) * d]) {
                *c = s * inv;
            }
        }
    }
    for i in 0..k {
        if counts[i] > 0 {
            continue;
        }
        let far = ds
            .points()
            .zip(assignment)
            .enumerate()
            .filter(|(j, _)| !taken[*j])
            .map(|(j, (p, &c))| (j, sq_dist(p, &centers[c * d..(c + 1) * d])))
            .fold(None, |acc: Option<(usize, f64)>, (j, dd)| match acc {
                Some((_, best)) if best >= dd => acc,
                _ => Some((j, dd)),
            });
        if let Some((j, _)) = far {
            taken[j] = true;
            centers[i * d..(i + 1) * d].copy_from_slice(ds.point(j));
        }
    }
}

/// Lloyd's algorithm from `k` random distinct dataset points.
pub fn kmeans(ds: &Dataset, k: usize, seed: u64) -> Result<KMeansResult> {
    let mut centers = initial_centers(ds, k, seed)?;
    let mut assignment = assign_nearest(ds, &centers);
    let mut history = Vec::new();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < DEFAULT_MAX_ITER {
        iterations += 1;
        update_means(ds, &assignment, &mut centers, k);
        history.push(kmeans_objective(ds, &assignment, &centers));
        let next = assign_nearest(ds, &centers);
        if next == assignment {
            converged = true;
            break;
        }
        assignment = next;
    }
    let partition = CrispPartition::new(assignment, k)?;
    if let Some(cluster) = partition.first_empty() {
        return Err(Error::EmptyCluster { cluster });
    }
    if !converged {
        update_means(ds, partition.assignment(), &mut centers, k);
        history.push(kmeans_objective(ds, partition.assignment(), &centers));
    }
    let objective = *history.last().expect("at least one iteration");
    Ok(KMeansResult {
        partition,
        centers,
        objective,
        iterations,
        history,
    })
}

/// Optimal memberships for fixed centers. A point that coincides with a
/// center belongs to it entirely (lowest such center wins).
fn update_memberships(ds: &Dataset, centers: &[f64], k: usize, m: f64, u: &mut [f64]) {
    let d = ds.dim();
    let n = ds.n();
    let expo = 1.0 / (m - 1.0);
    let mut d2 = vec![0.0; k];
    for (j, p) in ds.points().enumerate() {
        for (i, c) in centers.chunks_exact(d).enumerate() {
            d2[i] = sq_dist(p, c);
        }
        if let Some(hit) = d2.iter().position(|&v| v == 0.0) {
            for i in 0..k {
                u[i * n + j] = if i == hit { 1.0 } else { 0.0 };
            }
            continue;
        }
        // weights relative to the nearest center keep powers in range
        let dmin = d2.iter().copied().fold(f64::INFINITY, f64::min);
        let mut total = 0.0;
        for i in 0..k {
            let w = if m == 2.0 {
                dmin / d2[i]
            } else {
                (dmin / d2[i]).powf(expo)
            };
            u[i * n + j] = w;
            total += w;
        }
        for i in 0..k {
            u[i * n + j] /= total;
        }
    }
}

#[inline]
fn fuzzy_weight(u: f64, m: f64) -> f64 {
    if m == 2.0 {
        u * u
    } else {
        u.powf(m)
    }
}

fn update_fuzzy_centers(ds: &Dataset, u: &[f64], k: usize, m: f64, centers: &mut [f64]) {
    let d = ds.dim();
    let n = ds.n();
    for i in 0..k {
        let row = &mut centers[i * d..(i + 1) * d];
        let mut num = vec![0.0; d];
        let mut den = 0.0;
        for (j, p) in ds.points().enumerate() {
            let w = fuzzy_weight(u[i * n + j], m);
            if w == 0.0 {
                continue;
            }
            den += w;
            for (acc, x) in num.iter_mut().zip(p) {
                *acc += w * x;
            }
        }
        // a center with no weight at all keeps its previous position
        if den > 0.0 {
            for (c, s) in row.iter_mut().zip(num) {
                *c = s / den;
            }
        }
    }
}

fn fuzzy_objective_raw(ds: &Dataset, u: &[f64], centers: &[f64], k: usize, m: f64) -> f64 {
    let d = ds.dim();
    let n = ds.n();
    let mut total = 0.0;
    for i in 0..k {
        let c = &centers[i * d..(i + 1) * d];
        for (j, p) in ds.points().enumerate() {
            let w = fuzzy_weight(u[i * n + j], m);
            if w > 0.0 {
                total += w * sq_dist(p, c);
            }
        }
    }
    total
}

/// Fuzzy objective `sum_i sum_j u_ij^m ||x_j - v_i||^2`.
pub fn fcm_objective(ds: &Dataset, membership: &MembershipMatrix, m: f64) -> f64 {
    fuzzy_objective_raw(
        ds,
        membership.memberships(),
        membership.centers(),
        membership.k(),
        m,
    )
}

/// Fuzzy C-means by alternating membership and center updates until the
/// largest center displacement drops below `cfg.tol` or `cfg.max_iter` is hit.
pub fn fcm(ds: &Dataset, cfg: &FcmConfig) -> Result<FcmResult> {
    cfg.validate()?;
    let k = cfg.k;
    let d = ds.dim();
    let mut centers = initial_centers(ds, k, cfg.seed)?;
    let mut u = vec![0.0; k * ds.n()];
    let mut next = centers.clone();
    let mut history = Vec::new();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.max_iter {
        iterations += 1;
        update_memberships(ds, &centers, k, cfg.m, &mut u);
        update_fuzzy_centers(ds, &u, k, cfg.m, &mut next);
        history.push(fuzzy_objective_raw(ds, &u, &next, k, cfg.m));
        let shift = centers
            .chunks_exact(d)
            .zip(next.chunks_exact(d))
            .map(|(a, b)| sq_dist(a, b))
            .fold(0.0, f64::max)
            .sqrt();
        centers.copy_from_slice(&next);
        if shift < cfg.tol {
            converged = true;
            break;
        }
    }
    // final memberships answer the final centers
    update_memberships(ds, &centers, k, cfg.m, &mut u);
    let objective = fuzzy_objective_raw(ds, &u, &centers, k, cfg.m);
    history.push(objective);
    let membership = MembershipMatrix::new(u, centers, k, d)?;
    Ok(FcmResult {
        membership,
        objective,
        iterations,
        converged,
        history,
    })
}
