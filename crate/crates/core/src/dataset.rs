//! Dense point sets with optional ground-truth labels.

use crate::error::{Error, Result};

/// `n` points in `d` dimensions, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    name: String,
    points: Vec<f64>,
    n: usize,
    d: usize,
    labels: Option<Vec<usize>>,
}

impl Dataset {
    /// Builds a dataset from a flat row-major buffer of `n * d` values.
    pub fn new(name: impl Into<String>, points: Vec<f64>, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDataset("dimension must be >= 1".into()));
        }
        if points.is_empty() {
            return Err(Error::InvalidDataset("dataset has no points".into()));
        }
        if !points.len().is_multiple_of(d) {
            return Err(Error::InvalidDataset(format!(
                "buffer of {} values is not a multiple of d={d}",
                points.len()
            )));
        }
        if let Some(pos) = points.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidDataset(format!(
                "non-finite coordinate at point {}, dimension {}",
                pos / d,
                pos % d
            )));
        }
        let n = points.len() / d;
        Ok(Self {
            name: name.into(),
            points,
            n,
            d,
            labels: None,
        })
    }

    pub fn from_rows(name: impl Into<String>, rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.first().map(Vec::len).unwrap_or(0);
        let mut flat = Vec::with_capacity(rows.len() * d);
        for row in rows {
            if row.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: row.len(),
                });
            }
            flat.extend_from_slice(row);
        }
        Self::new(name, flat, d)
    }

    /// Attaches ground-truth labels. Ids must be contiguous from 0.
    pub fn with_labels(mut self, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: labels.len(),
            });
        }
        let k = labels.iter().max().map_or(0, |m| m + 1);
        let mut seen = vec![false; k];
        for &l in &labels {
            seen[l] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidDataset(format!(
                "label ids are not contiguous from 0: id {missing} is unused"
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn point(&self, j: usize) -> &[f64] {
        &self.points[j * self.d..(j + 1) * self.d]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.points.chunks_exact(self.d)
    }

    /// Row-major coordinate buffer.
    pub fn as_slice(&self) -> &[f64] {
        &self.points
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    /// Number of distinct ground-truth clusters, if labelled.
    pub fn label_count(&self) -> Option<usize> {
        self.labels
            .as_ref()
            .map(|l| l.iter().max().map_or(0, |m| m + 1))
    }

    /// Coordinate-wise mean of all points.
    pub fn mean(&self) -> Vec<f64> {
        let mut mean = vec![0.0; self.d];
        for p in self.points() {
            for (m, x) in mean.iter_mut().zip(p) {
                *m += x;
            }
        }
        let n = self.n as f64;
        mean.iter_mut().for_each(|m| *m /= n);
        mean
    }

    /// Returns a copy with every coordinate passed through `f`.
    pub fn map_coords(&self, mut f: impl FnMut(usize, f64) -> f64) -> Result<Self> {
        let d = self.d;
        let points = self
            .points
            .iter()
            .enumerate()
            .map(|(i, &v)| f(i % d, v))
            .collect();
        let out = Self::new(self.name.clone(), points, d)?;
        match &self.labels {
            Some(l) => out.with_labels(l.clone()),
            None => Ok(out),
        }
    }
}

pub(crate) fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    sq_dist(a, b).sqrt()
}
