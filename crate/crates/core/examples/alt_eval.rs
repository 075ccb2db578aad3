//! Repeated-run evaluation: how often does each index choose the candidate
//! partition closest to the ground truth?
//!
//!     cargo run --release --example alt_eval -- [labelled.csv] [runs]

use jdcvi::bench::{alt_eval, generate, load_csv, recipe, render, ReportFormat};
use jdcvi::clustering::FcmConfig;
use jdcvi::density::Divergence;

fn main() -> jdcvi::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let ds = match args.first() {
        Some(path) => load_csv(path)?,
        None => generate(&recipe("two-blobs", 0).expect("shipped recipe"))?,
    };
    let runs = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let result = alt_eval(&ds, &[2, 3, 4, 5], runs, &FcmConfig::new(2).with_seed(7), Divergence::Gaussian)?;
    println!("{} runs on {} ({} points)", result.runs, ds.name(), ds.n());
    print!("{}", render(&result, ReportFormat::Csv)?);
    Ok(())
}
