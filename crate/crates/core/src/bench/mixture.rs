//! Seeded Gaussian-mixture datasets and the shipped recipes.

use nalgebra::{Cholesky, DMatrix, DVector};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub weight: f64,
    pub mean: Vec<f64>,
    /// Row-major `d x d` covariance.
    pub cov: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureSpec {
    #[serde(default = "default_name")]
    pub name: String,
    pub components: Vec<Component>,
    pub n_total: usize,
    pub seed: u64,
}

fn default_name() -> String {
    "mixture".to_string()
}

impl MixtureSpec {
    pub fn dim(&self) -> usize {
        self.components.first().map_or(0, |c| c.mean.len())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn factors(&self) -> Result<Vec<DMatrix<f64>>> {
        let d = self.dim();
        if self.components.is_empty() || d == 0 {
            return Err(Error::InvalidConfig("mixture has no components".into()));
        }
        if self.n_total == 0 {
            return Err(Error::InvalidConfig("n_total must be >= 1".into()));
        }
        let total: f64 = self.components.iter().map(|c| c.weight).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidConfig(format!(
                "component weights sum to {total}, expected 1"
            )));
        }
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.weight.is_nan() || c.weight <= 0.0 {
                    return Err(Error::InvalidConfig(format!(
                        "component {i} has non-positive weight"
                    )));
                }
                if c.mean.len() != d || c.cov.len() != d * d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        got: c.mean.len(),
                    });
                }
                let cov = DMatrix::from_row_slice(d, d, &c.cov);
                Cholesky::new(cov).map(|ch| ch.l()).ok_or_else(|| {
                    Error::InvalidConfig(format!("component {i} covariance is not SPD"))
                })
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        self.factors().map(|_| ())
    }
}

/// Draws `n_total` labelled points: a component per point by weight, then
/// `mean + L z` with `z` standard normal and `L L^T = cov`.
pub fn generate(spec: &MixtureSpec) -> Result<Dataset> {
    let factors = spec.factors()?;
    let d = spec.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let picker = WeightedIndex::new(spec.components.iter().map(|c| c.weight))
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let mut points = Vec::with_capacity(spec.n_total * d);
    let mut labels = Vec::with_capacity(spec.n_total);
    for _ in 0..spec.n_total {
        let c = picker.sample(&mut rng);
        let z = DVector::from_fn(d, |_, _| StandardNormal.sample(&mut rng));
        let x = &factors[c] * z;
        points.extend(x.iter().zip(&spec.components[c].mean).map(|(a, m)| a + m));
        labels.push(c);
    }
    let ds = Dataset::new(spec.name.clone(), points, d)?;
    // a component that drew no points leaves a gap; close it, keeping order
    let mut used = vec![false; spec.components.len()];
    for &l in &labels {
        used[l] = true;
    }
    let remap: Vec<usize> = used
        .iter()
        .scan(0, |next, &u| {
            let id = *next;
            *next += usize::from(u);
            Some(id)
        })
        .collect();
    for l in labels.iter_mut() {
        *l = remap[*l];
    }
    ds.with_labels(labels)
}

/// Covariance with principal standard deviations `(s1, s2)` rotated by `angle`.
fn rotated_cov(s1: f64, s2: f64, angle: f64) -> Vec<f64> {
    let (sin, cos) = angle.sin_cos();
    let (v1, v2) = (s1 * s1, s2 * s2);
    let xx = v1 * cos * cos + v2 * sin * sin;
    let yy = v1 * sin * sin + v2 * cos * cos;
    let xy = (v1 - v2) * sin * cos;
    vec![xx, xy, xy, yy]
}

/// Layout of the fifteen-cluster benchmark family: centers on a 100 x 100
/// field and a shape (aspect ratio, orientation) per cluster.
const FIELD_CENTERS: [[f64; 2]; 15] = [
    [12.0, 14.0],
    [38.0, 9.0],
    [63.0, 13.0],
    [88.0, 10.0],
    [24.0, 37.0],
    [50.0, 33.0],
    [77.0, 36.0],
    [9.0, 60.0],
    [36.0, 62.0],
    [62.0, 57.0],
    [90.0, 61.0],
    [20.0, 86.0],
    [47.0, 85.0],
    [72.0, 82.0],
    [93.0, 88.0],
];

const FIELD_SHAPES: [(f64, f64); 15] = [
    (1.0, 0.0),
    (1.6, 0.4),
    (1.0, 0.0),
    (1.4, 2.0),
    (1.2, 1.1),
    (1.0, 0.0),
    (1.7, 2.6),
    (1.3, 0.8),
    (1.0, 0.0),
    (1.5, 1.9),
    (1.0, 0.0),
    (1.6, 0.2),
    (1.2, 2.9),
    (1.0, 0.0),
    (1.4, 1.3),
];

/// Fifteen 2-D Gaussian clusters with circular and elliptical shapes;
/// `spread` is the minor-axis standard deviation, so larger values mean
/// more overlap.
pub fn fifteen_cluster_field(name: &str, spread: f64, n_total: usize, seed: u64) -> MixtureSpec {
    let components = FIELD_CENTERS
        .iter()
        .zip(FIELD_SHAPES)
        .map(|(c, (aspect, angle))| Component {
            weight: 1.0 / 15.0,
            mean: c.to_vec(),
            cov: rotated_cov(spread * aspect, spread, angle),
        })
        .collect();
    MixtureSpec {
        name: name.to_string(),
        components,
        n_total,
        seed,
    }
}

/// Seed of the shipped recipe files.
pub const RECIPE_SEED: u64 = 0;

pub const RECIPE_NAMES: [&str; 7] = ["s1", "s2", "s3", "s4", "r15", "three-cluster", "two-blobs"];

/// Well-separated fifteen-cluster set, 5000 points.
pub fn s1(seed: u64) -> MixtureSpec {
    fifteen_cluster_field("S1", 2.5, 5000, seed)
}

/// Mild overlap.
pub fn s2(seed: u64) -> MixtureSpec {
    fifteen_cluster_field("S2", 4.5, 5000, seed)
}

/// Strong overlap between neighbouring clusters, 5000 points.
pub fn s3(seed: u64) -> MixtureSpec {
    fifteen_cluster_field("S3", 7.0, 5000, seed)
}

/// Neighbouring clusters barely distinguishable.
pub fn s4(seed: u64) -> MixtureSpec {
    fifteen_cluster_field("S4", 8.5, 5000, seed)
}

/// Fifteen tight clusters: one in the middle, seven on an inner ring and
/// seven on an outer ring, 600 points.
pub fn r15(seed: u64) -> MixtureSpec {
    let mut means = vec![vec![10.0, 10.0]];
    for ring in [(2.2, 0.0), (5.5, std::f64::consts::PI / 7.0)] {
        for i in 0..7 {
            let t = ring.1 + i as f64 * 2.0 * std::f64::consts::PI / 7.0;
            means.push(vec![10.0 + ring.0 * t.cos(), 10.0 + ring.0 * t.sin()]);
        }
    }
    let components = means
        .into_iter()
        .map(|mean| Component {
            weight: 1.0 / 15.0,
            mean,
            cov: vec![0.09, 0.0, 0.0, 0.09],
        })
        .collect();
    MixtureSpec {
        name: "R15".to_string(),
        components,
        n_total: 600,
        seed,
    }
}

/// Three 2-D clusters: A is compact and far from B (center distance 14.5);
/// B and C share a covariance elongated along their common axis, so they
/// overlap although their centers are 13.2 apart.
pub fn three_cluster_overlap(seed: u64) -> MixtureSpec {
    let elongated = vec![1.0, 0.0, 0.0, 25.0];
    MixtureSpec {
        name: "three-cluster-overlap".to_string(),
        components: vec![
            Component {
                weight: 1.0 / 3.0,
                mean: vec![-14.5, 0.0],
                cov: vec![2.25, 0.0, 0.0, 2.25],
            },
            Component {
                weight: 1.0 / 3.0,
                mean: vec![0.0, 0.0],
                cov: elongated.clone(),
            },
            Component {
                weight: 1.0 / 3.0,
                mean: vec![0.0, 13.2],
                cov: elongated,
            },
        ],
        n_total: 1500,
        seed,
    }
}

/// Two unit-variance 2-D blobs whose centers are `gap` apart.
pub fn two_blobs(gap: f64, n_total: usize, seed: u64) -> MixtureSpec {
    let comp = |x: f64| Component {
        weight: 0.5,
        mean: vec![x, 0.0],
        cov: vec![1.0, 0.0, 0.0, 1.0],
    };
    MixtureSpec {
        name: format!("two-blobs-{gap}"),
        components: vec![comp(-gap / 2.0), comp(gap / 2.0)],
        n_total,
        seed,
    }
}

/// Looks up a shipped recipe by name: `s1`..`s4`, `r15`, `three-cluster`,
/// `two-blobs`.
pub fn recipe(name: &str, seed: u64) -> Option<MixtureSpec> {
    match name.to_ascii_lowercase().as_str() {
        "s1" => Some(s1(seed)),
        "s2" => Some(s2(seed)),
        "s3" => Some(s3(seed)),
        "s4" => Some(s4(seed)),
        "r15" => Some(r15(seed)),
        "three-cluster" => Some(three_cluster_overlap(seed)),
        "two-blobs" => Some(two_blobs(10.0, 400, seed)),
        _ => None,
    }
}
