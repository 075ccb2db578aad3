//! Centre distance versus Jeffrey divergence on three clusters where the
//! closer pair of centres overlaps and the farther pair does not.

use jdcvi::bench::generate;
use jdcvi::bench::mixture::three_cluster_overlap;
use jdcvi::cvi::{fit_cluster_models, separation_s};
use jdcvi::density::Divergence;
use jdcvi::partition::CrispPartition;

fn main() -> jdcvi::Result<()> {
    let ds = generate(&three_cluster_overlap(3))?;
    let truth = CrispPartition::from_labels(&ds)?;
    let names = ["A", "B", "C"];
    for backend in [Divergence::Gaussian, Divergence::Kde] {
        let models = fit_cluster_models(&ds, &truth, backend)?;
        println!("{backend} densities");
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            let jd = models[i].jeffrey(&models[j])?;
            println!("  JD({}, {}) = {jd:10.3}", names[i], names[j]);
        }
        let s = separation_s(&models)?;
        println!("  per-cluster separation {:?}, S = {:.3}", s.per_cluster, s.total);
    }
    Ok(())
}
