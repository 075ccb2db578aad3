//! Writes every shipped mixture recipe as a spec JSON and a sampled CSV.
//!
//!     cargo run --example generate_mixture -- [OUT_DIR]

use std::path::PathBuf;

use jdcvi::bench::mixture::{recipe, RECIPE_NAMES, RECIPE_SEED};
use jdcvi::bench::{generate, save_csv};

fn main() -> jdcvi::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "target/recipes".into()));
    std::fs::create_dir_all(&dir).map_err(|e| jdcvi::Error::Io { path: dir.clone(), source: e })?;
    for name in RECIPE_NAMES {
        let spec = recipe(name, RECIPE_SEED).expect("known recipe");
        let file = name.replace('-', "_");
        let json = dir.join(format!("{file}.json"));
        let mut text = serde_json::to_string_pretty(&spec)?;
        text.push('\n');
        std::fs::write(&json, text).map_err(|e| jdcvi::Error::Io { path: json.clone(), source: e })?;
        let ds = generate(&spec)?;
        save_csv(&ds, dir.join(format!("{file}.csv")))?;
        println!(
            "{name:>14}: {} points, {} components -> {}",
            ds.n(),
            spec.components.len(),
            json.display()
        );
    }
    Ok(())
}
