use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use crate::error::{Error, Result};

/// Multivariate normal fitted by maximum likelihood.
#[derive(Debug, Clone)]
pub struct GaussianModel {
    mean: DVector<f64>,
    cov: DMatrix<f64>,
    chol: Cholesky<f64, Dyn>,
    n_fit: usize,
}

impl GaussianModel {
    /// Builds a model from explicit parameters. `cov` must be symmetric
    /// positive-definite.
    pub fn new(mean: Vec<f64>, cov: Vec<f64>) -> Result<Self> {
        let d = mean.len();
        if d == 0 || cov.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                got: cov.len(),
            });
        }
        let cov = DMatrix::from_row_slice(d, d, &cov);
        for i in 0..d {
            for j in 0..i {
                if (cov[(i, j)] - cov[(j, i)]).abs() > 1e-12 {
                    return Err(Error::InvalidConfig(format!(
                        "covariance is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let chol = Cholesky::new(cov.clone()).ok_or_else(|| {
            Error::InvalidConfig("covariance is not positive-definite".into())
        })?;
        Ok(Self {
            mean: DVector::from_vec(mean),
            cov,
            chol,
            n_fit: 0,
        })
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn mean(&self) -> &[f64] {
        self.mean.as_slice()
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    /// Lower-triangular factor `L` with `L L^T = cov`.
    pub fn chol_factor(&self) -> DMatrix<f64> {
        self.chol.l()
    }

    pub fn n_fit(&self) -> usize {
        self.n_fit
    }

    /// Log density at `x`.
    pub fn log_pdf(&self, x: &[f64]) -> f64 {
        let d = self.dim();
        let diff = DVector::from_column_slice(x) - &self.mean;
        let z = self
            .chol
            .l_dirty()
            .solve_lower_triangular(&diff)
            .expect("cholesky factor has a positive diagonal");
        let log_det: f64 = (0..d).map(|i| self.chol.l_dirty()[(i, i)].ln()).sum::<f64>() * 2.0;
        -0.5 * (d as f64 * (2.0 * std::f64::consts::PI).ln() + log_det + z.norm_squared())
    }
}

/// Sample mean and `1/N`-normalized scatter matrix, regularized by
/// `eps * I` with `eps = max(1e-8 * trace / d, 1e-12)`.
pub fn fit_gaussian(points: &[&[f64]]) -> Result<GaussianModel> {
    let first = points.first().ok_or(Error::EmptyCluster { cluster: 0 })?;
    let d = first.len();
    let n = points.len() as f64;
    let mut mean = DVector::zeros(d);
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
    mean /= n;

    let mut cov = DMatrix::zeros(d, d);
    let mut diff = DVector::zeros(d);
    for p in points {
        for (t, (x, m)) in diff.iter_mut().zip(p.iter().zip(mean.iter())) {
            *t = x - m;
        }
        cov.ger(1.0, &diff, &diff, 1.0);
    }
    cov /= n;
    // exact symmetry
    for i in 0..d {
        for j in 0..i {
            let s = 0.5 * (cov[(i, j)] + cov[(j, i)]);
            cov[(i, j)] = s;
            cov[(j, i)] = s;
        }
    }
    let eps = (1e-8 * cov.trace() / d as f64).max(1e-12);
    for i in 0..d {
        cov[(i, i)] += eps;
    }
    let chol = Cholesky::new(cov.clone())
        .ok_or_else(|| Error::InvalidConfig("regularized covariance is not positive-definite".into()))?;
    Ok(GaussianModel {
        mean,
        cov,
        chol,
        n_fit: points.len(),
    })
}

/// `tr(A^{-1} B)` as `||L_A^{-1} L_B||_F^2`.
fn trace_inv_product(a: &GaussianModel, b: &GaussianModel) -> f64 {
    let lb = b.chol.l();
    a.chol
        .l_dirty()
        .solve_lower_triangular(&lb)
        .expect("cholesky factor has a positive diagonal")
        .norm_squared()
}

/// `delta^T A^{-1} delta` as `||L_A^{-1} delta||^2`.
fn mahalanobis_sq(a: &GaussianModel, delta: &DVector<f64>) -> f64 {
    a.chol
        .l_dirty()
        .solve_lower_triangular(delta)
        .expect("cholesky factor has a positive diagonal")
        .norm_squared()
}

/// Closed-form Jeffrey divergence (symmetrized KL) between two Gaussians:
///
/// `1/2 (tr(S1^-1 S2) + tr(S2^-1 S1)) + 1/2 dmu^T (S1^-1 + S2^-1) dmu - d`
///
/// Every inverse is applied through triangular solves on the cached factors.
pub fn jd_gaussian(a: &GaussianModel, b: &GaussianModel) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let delta = &a.mean - &b.mean;
    let traces = trace_inv_product(a, b) + trace_inv_product(b, a);
    let quad = mahalanobis_sq(a, &delta) + mahalanobis_sq(b, &delta);
    Ok(0.5 * traces + 0.5 * quad - a.dim() as f64)
}
