//! Pair-counting agreement between k-means partitions and the ground truth.

use jdcvi::bench::{generate, recipe};
use jdcvi::clustering::kmeans;
use jdcvi::partition::CrispPartition;
use jdcvi::similarity::{pair_counts, SimilarityMeasure};

fn main() -> jdcvi::Result<()> {
    let ds = generate(&recipe("r15", 0).expect("shipped recipe"))?;
    let truth = CrispPartition::from_labels(&ds)?;
    for k in [10, 15, 20] {
        let p = kmeans(&ds, k, 1)?.partition;
        let pc = pair_counts(&p, &truth)?;
        print!("k = {k:>2}  a={:<6} b={:<6} c={:<6} d={:<6}", pc.a, pc.b, pc.c, pc.d);
        for m in SimilarityMeasure::ALL {
            match m.evaluate(&pc) {
                Ok(v) => print!("  {}={v:.4}", m.name()),
                Err(_) => print!("  {}=NA", m.name()),
            }
        }
        println!();
    }
    Ok(())
}
