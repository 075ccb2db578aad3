//! Runs a sweep described by a JSON experiment file.
//!
//!     cargo run --release --example experiment_config -- data/experiment.json

use std::path::Path;

use jdcvi::bench::{classic_sweep, render, ExperimentConfig, ReportFormat};

fn main() -> jdcvi::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "data/experiment.json".into());
    let cfg = ExperimentConfig::load(&path)?;
    let base = Path::new(&path).parent().unwrap_or(Path::new("."));
    let ds = cfg.dataset(base)?;
    let result = classic_sweep(&ds, cfg.k_range()?, &cfg.fcm_config(), cfg.divergence)?;
    print!("{}", render(&result, ReportFormat::Json)?);
    Ok(())
}
