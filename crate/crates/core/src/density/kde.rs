use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Floor applied to variances before building a bandwidth.
pub const VARIANCE_FLOOR: f64 = 1e-12;

/// Density floor used by [`jd_kde`] when none is given.
pub const DEFAULT_DENSITY_FLOOR: f64 = 1e-300;

/// Gaussian kernel density estimate with a diagonal bandwidth matrix.
#[derive(Debug, Clone)]
pub struct KdeModel {
    samples: Vec<f64>,
    n: usize,
    d: usize,
    bandwidth: Vec<f64>,
    inv_bandwidth: Vec<f64>,
    log_norm: f64,
}

impl KdeModel {
    /// `bandwidth` holds the diagonal of `H` (variances, not standard deviations).
    pub fn new(samples: &[&[f64]], bandwidth: Vec<f64>) -> Result<Self> {
        let d = bandwidth.len();
        if samples.is_empty() {
            return Err(Error::EmptyCluster { cluster: 0 });
        }
        if d == 0 || bandwidth.iter().any(|h| !(*h > 0.0 && h.is_finite())) {
            return Err(Error::InvalidConfig(
                "bandwidth entries must be positive and finite".into(),
            ));
        }
        let mut flat = Vec::with_capacity(samples.len() * d);
        for s in samples {
            if s.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: s.len(),
                });
            }
            flat.extend_from_slice(s);
        }
        // log(|H|^{-1/2} (2 pi)^{-d/2})
        let log_norm = -0.5 * bandwidth.iter().map(|h| h.ln()).sum::<f64>()
            - 0.5 * d as f64 * (2.0 * PI).ln();
        Ok(Self {
            samples: flat,
            n: samples.len(),
            d,
            inv_bandwidth: bandwidth.iter().map(|h| 1.0 / h).collect(),
            bandwidth,
            log_norm,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn bandwidth(&self) -> &[f64] {
        &self.bandwidth
    }

    pub fn log_norm(&self) -> f64 {
        self.log_norm
    }

    pub fn samples(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.samples.chunks_exact(self.d)
    }

    /// `ln p_H(x)`, evaluated with log-sum-exp so far-away points do not
    /// underflow before the floor is applied.
    pub fn log_density(&self, x: &[f64]) -> f64 {
        // streaming log-sum-exp
        let mut max = f64::NEG_INFINITY;
        let mut acc = 0.0;
        for s in self.samples() {
            let q: f64 = x
                .iter()
                .zip(s)
                .zip(&self.inv_bandwidth)
                .map(|((a, b), ih)| (a - b) * (a - b) * ih)
                .sum();
            let e = -0.5 * q;
            if e > max {
                acc = acc * (max - e).exp() + 1.0;
                max = e;
            } else {
                acc += (e - max).exp();
            }
        }
        max + acc.ln() - (self.n as f64).ln() + self.log_norm
    }

    pub fn density(&self, x: &[f64]) -> f64 {
        self.log_density(x).exp()
    }
}

/// Scott's rule per dimension: `H_jj = N^(-2/(d+4)) * var_j`, with the
/// unbiased sample variance floored at [`VARIANCE_FLOOR`].
pub fn fit_kde(points: &[&[f64]]) -> Result<KdeModel> {
    let first = points.first().ok_or(Error::EmptyCluster { cluster: 0 })?;
    let d = first.len();
    let n = points.len();
    let mut mean = vec![0.0; d];
    for p in points {
        if p.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.len(),
            });
        }
        for (m, x) in mean.iter_mut().zip(p.iter()) {
            *m += x;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n as f64);
    let mut var = vec![0.0; d];
    for p in points {
        for ((v, x), m) in var.iter_mut().zip(p.iter()).zip(&mean) {
            *v += (x - m) * (x - m);
        }
    }
    let denom = if n > 1 { (n - 1) as f64 } else { 1.0 };
    let scale = (n as f64).powf(-2.0 / (d as f64 + 4.0));
    let bandwidth = var
        .into_iter()
        .map(|v| scale * (v / denom).max(VARIANCE_FLOOR))
        .collect();
    KdeModel::new(points, bandwidth)
}

fn kl_plugin(p: &KdeModel, q: &KdeModel, log_floor: f64) -> f64 {
    let total: f64 = p
        .samples()
        .map(|x| p.log_density(x).max(log_floor) - q.log_density(x).max(log_floor))
        .sum();
    total / p.len() as f64
}

/// Jeffrey divergence between two KDEs, estimated on their own samples:
/// `KL(a||b) + KL(b||a)` with `KL(a||b) = mean_{x in a} ln(max(p_a,floor)/max(p_b,floor))`.
pub fn jd_kde(a: &KdeModel, b: &KdeModel, floor: f64) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let log_floor = floor.ln();
    Ok(kl_plugin(a, b, log_floor) + kl_plugin(b, a, log_floor))
}
