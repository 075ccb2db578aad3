//! Fuzzy and crisp partitions, and hardening between them.

use crate::dataset::Dataset;
use crate::error::{Error, Result};

/// Allowed deviation of a membership column sum from 1.
pub const COLUMN_SUM_TOLERANCE: f64 = 1e-9;

/// `k x n` fuzzy memberships together with the `k x d` cluster centers.
///
/// Row `i` of `u` and row `i` of `centers` describe the same cluster.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipMatrix {
    u: Vec<f64>,
    centers: Vec<f64>,
    k: usize,
    n: usize,
    d: usize,
}

impl MembershipMatrix {
    /// `u` is row-major `k x n`, `centers` row-major `k x d`.
    pub fn new(u: Vec<f64>, centers: Vec<f64>, k: usize, d: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidMembership("k must be >= 1".into()));
        }
        if d == 0 || centers.len() != k * d {
            return Err(Error::InvalidMembership(format!(
                "expected {k} centers of dimension {d}, got {} values",
                centers.len()
            )));
        }
        if u.is_empty() || !u.len().is_multiple_of(k) {
            return Err(Error::InvalidMembership(format!(
                "{} memberships do not form {k} rows",
                u.len()
            )));
        }
        let n = u.len() / k;
        if let Some(pos) = u.iter().position(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::InvalidMembership(format!(
                "u[{}][{}] = {} is outside [0, 1]",
                pos / n,
                pos % n,
                u[pos]
            )));
        }
        if centers.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidMembership("non-finite center".into()));
        }
        for j in 0..n {
            let s: f64 = (0..k).map(|i| u[i * n + j]).sum();
            if (s - 1.0).abs() > COLUMN_SUM_TOLERANCE {
                return Err(Error::InvalidMembership(format!(
                    "column {j} sums to {s}"
                )));
            }
        }
        Ok(Self { u, centers, k, n, d })
    }

    /// Crisp memberships (one-hot columns) reconstructed from a partition.
    pub fn from_crisp(p: &CrispPartition, centers: Vec<f64>, d: usize) -> Result<Self> {
        let (k, n) = (p.k(), p.n());
        let mut u = vec![0.0; k * n];
        for (j, &c) in p.assignment().iter().enumerate() {
            u[c * n + j] = 1.0;
        }
        Self::new(u, centers, k, d)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.u[i * self.n + j]
    }

    /// Memberships of all points in cluster `i`.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.u[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        (0..self.k).map(move |i| self.get(i, j))
    }

    pub fn center(&self, i: usize) -> &[f64] {
        &self.centers[i * self.d..(i + 1) * self.d]
    }

    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    pub fn memberships(&self) -> &[f64] {
        &self.u
    }

    pub(crate) fn check_dataset(&self, ds: &Dataset) -> Result<()> {
        if ds.n() != self.n {
            return Err(Error::LengthMismatch {
                left: ds.n(),
                right: self.n,
            });
        }
        if ds.dim() != self.d {
            return Err(Error::DimensionMismatch {
                expected: ds.dim(),
                got: self.d,
            });
        }
        Ok(())
    }
}

/// Hard assignment of each point to one of `k` clusters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrispPartition {
    assignment: Vec<usize>,
    k: usize,
}

impl CrispPartition {
    pub fn new(assignment: Vec<usize>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidPartition("k must be >= 1".into()));
        }
        if let Some((j, &c)) = assignment.iter().enumerate().find(|(_, &c)| c >= k) {
            return Err(Error::InvalidPartition(format!(
                "point {j} assigned to cluster {c}, but k = {k}"
            )));
        }
        Ok(Self { assignment, k })
    }

    /// Partition induced by dataset labels.
    pub fn from_labels(ds: &Dataset) -> Result<Self> {
        let labels = ds
            .labels()
            .ok_or_else(|| Error::MissingLabels(ds.name().to_string()))?;
        Self::new(labels.to_vec(), ds.label_count().unwrap_or(1).max(1))
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &c in &self.assignment {
            sizes[c] += 1;
        }
        sizes
    }

    /// First cluster with no members, if any.
    pub fn first_empty(&self) -> Option<usize> {
        self.sizes().iter().position(|&s| s == 0)
    }
}

/// Assigns each point to its highest-membership cluster; ties go to the
/// lowest cluster index. Cluster ids match the rows of `m`, so `m.center(i)`
/// remains the center of crisp cluster `i`.
pub fn harden(m: &MembershipMatrix) -> CrispPartition {
    let assignment = (0..m.n())
        .map(|j| {
            let mut best = 0;
            let mut best_u = m.get(0, j);
            for i in 1..m.k() {
                let u = m.get(i, j);
                if u > best_u {
                    best = i;
                    best_u = u;
                }
            }
            best
        })
        .collect();
    CrispPartition {
        assignment,
        k: m.k(),
    }
}

/// Points assigned to cluster `i`, in dataset order. May be empty.
pub fn cluster_members<'a>(p: &CrispPartition, ds: &'a Dataset, i: usize) -> Vec<&'a [f64]> {
    p.assignment()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == i)
        .map(|(j, _)| ds.point(j))
        .collect()
}
