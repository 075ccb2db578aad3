//! The divergence-based index `I = V / S`.
//!
//! `V` sums, over clusters, the squared distance from the center to the
//! farthest member. `S` sums, over clusters, the smallest Jeffrey divergence
//! between that cluster's density and any other cluster's density. Small `I`
//! means tight clusters whose densities barely overlap.

use crate::dataset::{sq_dist, Dataset};
use crate::density::{ClusterModel, Divergence};
use crate::error::{Error, Result};
use crate::partition::{cluster_members, harden, CrispPartition, MembershipMatrix};

/// Separation measure and its per-cluster terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Separation {
    pub total: f64,
    pub per_cluster: Vec<f64>,
}

/// Sum over clusters of the squared maximal member-to-center distance.
pub fn compactness_v(ds: &Dataset, p: &CrispPartition, centers: &[f64]) -> Result<f64> {
    let (k, d) = (p.k(), ds.dim());
    if p.n() != ds.n() {
        return Err(Error::LengthMismatch {
            left: ds.n(),
            right: p.n(),
        });
    }
    if centers.len() != k * d {
        return Err(Error::DimensionMismatch {
            expected: k * d,
            got: centers.len(),
        });
    }
    let mut radius = vec![f64::NEG_INFINITY; k];
    for (x, &c) in ds.points().zip(p.assignment()) {
        radius[c] = radius[c].max(sq_dist(x, &centers[c * d..(c + 1) * d]));
    }
    if let Some(cluster) = radius.iter().position(|r| *r == f64::NEG_INFINITY) {
        return Err(Error::EmptyCluster { cluster });
    }
    Ok(radius.iter().sum())
}

/// `Sep_i = min_{j != i} JD(C_i, C_j)` and `S = sum_i Sep_i`.
pub fn separation_s(models: &[ClusterModel]) -> Result<Separation> {
    let k = models.len();
    if k < 2 {
        return Err(Error::InsufficientClusters { k });
    }
    let mut per_cluster = vec![f64::INFINITY; k];
    for i in 0..k {
        for j in i + 1..k {
            let jd = models[i].jeffrey(&models[j])?;
            per_cluster[i] = per_cluster[i].min(jd);
            per_cluster[j] = per_cluster[j].min(jd);
        }
    }
    Ok(Separation {
        total: per_cluster.iter().sum(),
        per_cluster,
    })
}

/// Fits one density per crisp cluster.
pub fn fit_cluster_models(
    ds: &Dataset,
    p: &CrispPartition,
    backend: Divergence,
) -> Result<Vec<ClusterModel>> {
    (0..p.k())
        .map(|i| {
            let members = cluster_members(p, ds, i);
            if members.is_empty() {
                return Err(Error::EmptyCluster { cluster: i });
            }
            ClusterModel::fit(&members, backend)
        })
        .collect()
}

/// Index `I` of a crisp partition with explicit centers.
pub fn index_i_crisp(
    ds: &Dataset,
    p: &CrispPartition,
    centers: &[f64],
    backend: Divergence,
) -> Result<f64> {
    if p.k() < 2 {
        return Err(Error::InsufficientClusters { k: p.k() });
    }
    let v = compactness_v(ds, p, centers)?;
    let models = fit_cluster_models(ds, p, backend)?;
    let s = separation_s(&models)?;
    if s.total.is_nan() || s.total <= 0.0 {
        return Err(Error::ZeroSeparation);
    }
    Ok(v / s.total)
}

/// Index `I = V / S` of a fuzzy partition: memberships are hardened, a
/// density is fitted per cluster, and `V` is measured from the partition's
/// own centers.
pub fn index_i(ds: &Dataset, m: &MembershipMatrix, backend: Divergence) -> Result<f64> {
    m.check_dataset(ds)?;
    index_i_crisp(ds, &harden(m), m.centers(), backend)
}
