//! k-sweep over a dataset, printed as a CSV report.
//!
//!     cargo run --release --example classic_sweep -- [recipe|file.csv] [k_min] [k_max] [seed]

use jdcvi::bench::{classic_sweep, generate, load_csv, recipe, render, KRange, ReportFormat};
use jdcvi::clustering::FcmConfig;
use jdcvi::cvi::CviIndex;
use jdcvi::density::Divergence;

fn main() -> jdcvi::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let source = args.first().map_or("s1", String::as_str);
    let k_min = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let k_max = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(20);
    let seed = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(0);
    let ds = match recipe(source, 0) {
        Some(spec) => generate(&spec)?,
        None => load_csv(source)?,
    };
    let result = classic_sweep(
        &ds,
        KRange::new(k_min, k_max)?,
        &FcmConfig::new(k_min).with_seed(seed),
        Divergence::Gaussian,
    )?;
    print!("{}", render(&result, ReportFormat::Csv)?);
    for index in CviIndex::ALL {
        let best = result.best_k[&index].map_or("none".to_string(), |k| k.to_string());
        println!("# best k by {:<8} {best}", index.name());
    }
    Ok(())
}
