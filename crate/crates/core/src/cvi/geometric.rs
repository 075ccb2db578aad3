//! Indexes that combine memberships with the data geometry.

use rayon::prelude::*;

use crate::dataset::{dist, sq_dist, Dataset};
use crate::error::{Error, Result};
use crate::partition::{CrispPartition, MembershipMatrix};

/// Contrast `(b - a) / (b + a)` below which a point counts as overlapping.
pub const OVERLAP_THRESHOLD: f64 = 0.4;

fn require_pairs(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InsufficientClusters { k });
    }
    Ok(())
}

fn max_center_distance(m: &MembershipMatrix) -> f64 {
    let mut best: f64 = 0.0;
    for i in 0..m.k() {
        for l in i + 1..m.k() {
            best = best.max(dist(m.center(i), m.center(l)));
        }
    }
    best
}

/// Xie-Beni: fuzzy compactness over `n` times the minimum squared center gap.
pub fn xb(ds: &Dataset, m: &MembershipMatrix) -> Result<f64> {
    m.check_dataset(ds)?;
    require_pairs(m.k())?;
    let mut min_gap = (f64::INFINITY, 0, 1);
    for i in 0..m.k() {
        for l in i + 1..m.k() {
            let g = sq_dist(m.center(i), m.center(l));
            if g < min_gap.0 {
                min_gap = (g, i, l);
            }
        }
    }
    if min_gap.0 == 0.0 {
        return Err(Error::DegenerateCenters {
            first: min_gap.1,
            second: min_gap.2,
        });
    }
    let mut num = 0.0;
    for i in 0..m.k() {
        let c = m.center(i);
        for (u, p) in m.row(i).iter().zip(ds.points()) {
            num += u * u * sq_dist(p, c);
        }
    }
    Ok(num / (ds.n() as f64 * min_gap.0))
}

/// PBMF: `((1/k) * (E1 / J_m) * D_c)^2`, where `E1` is measured from the
/// grand mean of the dataset and `J_m` weights distances by `u` (not `u^m`).
pub fn pbmf(ds: &Dataset, m: &MembershipMatrix) -> Result<f64> {
    m.check_dataset(ds)?;
    require_pairs(m.k())?;
    let mut jm = 0.0;
    for i in 0..m.k() {
        let c = m.center(i);
        for (u, p) in m.row(i).iter().zip(ds.points()) {
            if *u > 0.0 {
                jm += u * dist(p, c);
            }
        }
    }
    if jm == 0.0 {
        return Err(Error::ZeroDispersion);
    }
    let grand = ds.mean();
    let e1: f64 = ds.points().map(|p| dist(p, &grand)).sum();
    let ratio = e1 / jm * max_center_distance(m) / m.k() as f64;
    Ok(ratio * ratio)
}

/// Sum of squared errors between each point and its reconstruction from the
/// `u^2`-weighted centers.
pub fn granulation_error(ds: &Dataset, m: &MembershipMatrix) -> Result<f64> {
    m.check_dataset(ds)?;
    let d = ds.dim();
    let mut total = 0.0;
    let mut xhat = vec![0.0; d];
    for (j, p) in ds.points().enumerate() {
        xhat.iter_mut().for_each(|v| *v = 0.0);
        let mut den = 0.0;
        for i in 0..m.k() {
            let w = m.get(i, j) * m.get(i, j);
            if w == 0.0 {
                continue;
            }
            den += w;
            for (h, c) in xhat.iter_mut().zip(m.center(i)) {
                *h += w * c;
            }
        }
        xhat.iter_mut().for_each(|h| *h /= den);
        total += sq_dist(p, &xhat);
    }
    Ok(total)
}

/// PBM with granulation error: `((1/k) * D_c / sqrt(gran_error))^2`.
/// A zero granulation error (perfect reconstruction) yields `+inf`.
pub fn pbm_fvg(ds: &Dataset, m: &MembershipMatrix) -> Result<f64> {
    m.check_dataset(ds)?;
    require_pairs(m.k())?;
    let gran = granulation_error(ds, m)?;
    if gran == 0.0 {
        return Ok(f64::INFINITY);
    }
    let ratio = max_center_distance(m) / m.k() as f64 / gran.sqrt();
    Ok(ratio * ratio)
}

/// Overlap-separation index. Per point, `a` is the mean distance to its own
/// cluster (itself included) and `b` the mean distance to all other points;
/// the point contributes `a / b` when `(b - a) / (b + a) < 0.4`. The total
/// overlap is divided by the sum of nearest-center distances.
pub fn os(ds: &Dataset, p: &CrispPartition, centers: &[f64]) -> Result<f64> {
    let (n, k, d) = (ds.n(), p.k(), ds.dim());
    if p.n() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: p.n(),
        });
    }
    if centers.len() != k * d {
        return Err(Error::DimensionMismatch {
            expected: k * d,
            got: centers.len(),
        });
    }
    require_pairs(k)?;
    let sizes = p.sizes();
    if let Some(cluster) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::EmptyCluster { cluster });
    }
    let assignment = p.assignment();
    let contributions: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|j| {
            let x = ds.point(j);
            let own = assignment[j];
            let mut within = 0.0;
            let mut across = 0.0;
            for (l, y) in ds.points().enumerate() {
                let dd = dist(x, y);
                if assignment[l] == own {
                    within += dd;
                } else {
                    across += dd;
                }
            }
            let a = within / sizes[own] as f64;
            let b = across / (n - sizes[own]) as f64;
            if (b - a) / (b + a) < OVERLAP_THRESHOLD {
                a / b
            } else {
                0.0
            }
        })
        .collect();
    let overlap: f64 = contributions.iter().sum();
    let center = |i: usize| &centers[i * d..(i + 1) * d];
    let mut separation = 0.0;
    for i in 0..k {
        let mut nearest = (f64::INFINITY, i);
        for l in (0..k).filter(|&l| l != i) {
            let g = dist(center(i), center(l));
            if g < nearest.0 {
                nearest = (g, l);
            }
        }
        if nearest.0 == 0.0 {
            return Err(Error::DegenerateCenters {
                first: i.min(nearest.1),
                second: i.max(nearest.1),
            });
        }
        separation += nearest.0;
    }
    Ok(overlap / separation)
}
