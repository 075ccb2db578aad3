//! Fuzzy c-means and k-means on a three-cluster mixture.

use jdcvi::bench::generate;
use jdcvi::bench::mixture::three_cluster_overlap;
use jdcvi::clustering::{fcm, kmeans, FcmConfig};
use jdcvi::partition::harden;

fn main() -> jdcvi::Result<()> {
    let ds = generate(&three_cluster_overlap(11))?;
    let fit = fcm(&ds, &FcmConfig::new(3).with_seed(4))?;
    println!(
        "fcm: {} iterations, converged = {}, objective = {:.3}",
        fit.iterations, fit.converged, fit.objective
    );
    let m = &fit.membership;
    for i in 0..m.k() {
        let c = m.center(i);
        let mass: f64 = m.row(i).iter().sum();
        println!("  cluster {i}: center ({:7.3}, {:7.3}), membership mass {mass:8.2}", c[0], c[1]);
    }
    let sizes = harden(m).sizes();
    println!("  hardened sizes {sizes:?}");

    let km = kmeans(&ds, 3, 4)?;
    println!(
        "kmeans: {} iterations, objective = {:.3}, sizes {:?}",
        km.iterations,
        km.objective,
        km.partition.sizes()
    );
    Ok(())
}
