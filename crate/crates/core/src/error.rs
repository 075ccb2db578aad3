use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("invalid membership matrix: {0}")]
    InvalidMembership(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("partition lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("cluster {cluster} is empty")]
    EmptyCluster { cluster: usize },

    #[error("index needs at least 2 clusters, got {k}")]
    InsufficientClusters { k: usize },

    #[error("cluster centers {first} and {second} coincide")]
    DegenerateCenters { first: usize, second: usize },

    #[error("membership-weighted dispersion J_m is zero")]
    ZeroDispersion,

    #[error("separation is zero: cluster densities are indistinguishable")]
    ZeroSeparation,

    #[error("cannot mix density backends in one separation measure")]
    BackendMismatch,

    #[error("{measure} is undefined for these pair counts (zero denominator)")]
    UndefinedSimilarity { measure: &'static str },

    #[error("dataset `{0}` has no ground-truth labels")]
    MissingLabels(String),

    #[error("{path}: line {line}, column {column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: line {line} has {got} fields, expected {expected}")]
    RaggedRow {
        path: PathBuf,
        line: usize,
        expected: usize,
        got: usize,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
