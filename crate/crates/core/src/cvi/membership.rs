//! Indexes computed from memberships alone.

use crate::error::{Error, Result};
use crate::partition::MembershipMatrix;

/// Partition coefficient: mean of squared memberships, in `[1/k, 1]`.
pub fn pc(m: &MembershipMatrix) -> f64 {
    let sum: f64 = m.memberships().iter().map(|u| u * u).sum();
    sum / m.n() as f64
}

/// Partition entropy with natural log and `0 ln 0 = 0`, in `[0, ln k]`.
pub fn pe(m: &MembershipMatrix) -> f64 {
    let sum: f64 = m
        .memberships()
        .iter()
        .filter(|&&u| u > 0.0)
        .map(|&u| u * u.ln())
        .sum();
    -sum / m.n() as f64
}

/// Mean maximum membership minus the mean pairwise membership overlap.
pub fn p_index(m: &MembershipMatrix) -> Result<f64> {
    let k = m.k();
    if k < 2 {
        return Err(Error::InsufficientClusters { k });
    }
    let n = m.n() as f64;
    let compact: f64 = (0..m.n())
        .map(|j| m.column(j).fold(f64::NEG_INFINITY, f64::max))
        .sum::<f64>()
        / n;
    let mut overlap = 0.0;
    for i in 0..k - 1 {
        for l in i + 1..k {
            let shared: f64 = m
                .row(i)
                .iter()
                .zip(m.row(l))
                .map(|(a, b)| a.min(*b))
                .sum();
            overlap += shared / n;
        }
    }
    let pairs = (k * (k - 1) / 2) as f64;
    Ok(compact - overlap / pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mm(u: Vec<f64>, k: usize) -> MembershipMatrix {
        MembershipMatrix::new(u, (0..k).map(|i| i as f64).collect(), k, 1).unwrap()
    }

    fn uniform(k: usize, n: usize) -> MembershipMatrix {
        mm(vec![1.0 / k as f64; k * n], k)
    }

    fn crisp() -> MembershipMatrix {
        mm(vec![1.0, 0.0, 1.0, 0.0, 1.0, 0.0], 2)
    }

    #[test]
    fn pc_cases() {
        assert_eq!(pc(&crisp()), 1.0);
        assert!((pc(&uniform(4, 5)) - 0.25).abs() < 1e-15);
        let m = mm(vec![0.8, 0.3, 0.2, 0.7], 2);
        assert!((pc(&m) - 0.63).abs() < 1e-12);
    }

    #[test]
    fn pe_cases() {
        assert_eq!(pe(&crisp()), 0.0);
        assert!((pe(&uniform(3, 4)) - 3f64.ln()).abs() < 1e-12);
        let m = mm(vec![0.5; 4], 2);
        assert!((pe(&m) - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn p_cases() {
        assert_eq!(p_index(&crisp()).unwrap(), 1.0);
        assert_eq!(p_index(&uniform(2, 3)).unwrap(), 0.0);
        let m = mm(vec![0.8, 0.3, 0.2, 0.7], 2);
        assert!((p_index(&m).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn p_needs_two_clusters() {
        let m = mm(vec![1.0, 1.0], 1);
        assert!(matches!(p_index(&m), Err(Error::InsufficientClusters { k: 1 })));
    }
}
