//! Cluster validity indexes for fuzzy and crisp partitions, including the
//! divergence-based index `I`, which weighs cluster compactness against the
//! Jeffrey divergence between per-cluster densities.
//!
//! The crate also ships fuzzy c-means and k-means, Gaussian and kernel
//! density models, pair-counting partition similarity, and a benchmark
//! harness that runs k-sweeps and repeated-run evaluations.
//!
//! ```
//! use jdcvi::bench::{generate, mixture::two_blobs};
//! use jdcvi::clustering::{fcm, FcmConfig};
//! use jdcvi::cvi::{evaluate_all, CviIndex};
//! use jdcvi::density::Divergence;
//!
//! let ds = generate(&two_blobs(8.0, 200, 1)).unwrap();
//! let fit = fcm(&ds, &FcmConfig::new(2).with_seed(3)).unwrap();
//! let report = evaluate_all(&ds, &fit.membership, Divergence::Gaussian).unwrap();
//! assert!(report.get(CviIndex::I).unwrap() > 0.0);
//! ```

pub mod bench;
pub mod cli;
pub mod clustering;
pub mod cvi;
pub mod dataset;
pub mod density;
pub mod error;
pub mod partition;
pub mod similarity;

pub use dataset::Dataset;
pub use error::{Error, Result};
pub use partition::{CrispPartition, MembershipMatrix};
