//! Synthetic data, dataset files, and the two evaluation methodologies.

pub mod alt;
pub mod config;
pub mod io;
pub mod mixture;
pub mod report;
pub mod sweep;

pub use alt::{alt_eval, run_seed, AltEvalResult, RunOutcome};
pub use config::{DataSource, ExperimentConfig};
pub use io::{load_csv, load_partition, save_csv, save_partition};
pub use mixture::{generate, recipe, Component, MixtureSpec};
pub use report::{emit_report, render, Report, ReportFormat, ReportValue};
pub use sweep::{classic_sweep, select_k, KRange, DEFAULT_SEEDS, SweepResult};
