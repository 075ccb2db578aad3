//! Every validity index on fuzzy c-means partitions of R15 at k = 13..=17.

use jdcvi::bench::{generate, recipe};
use jdcvi::clustering::{fcm, FcmConfig};
use jdcvi::cvi::{evaluate_all, CviIndex};
use jdcvi::density::Divergence;

fn main() -> jdcvi::Result<()> {
    let ds = generate(&recipe("r15", 0).expect("shipped recipe"))?;
    print!("{:>3}", "k");
    for index in CviIndex::ALL {
        print!(" {:>12}", index.name());
    }
    println!();
    for k in 13..=17 {
        let fit = fcm(&ds, &FcmConfig::new(k).with_seed(2))?;
        let report = evaluate_all(&ds, &fit.membership, Divergence::Gaussian)?;
        print!("{k:>3}");
        for index in CviIndex::ALL {
            match report.get(index) {
                Some(v) => print!(" {v:>12.5}"),
                None => print!(" {:>12}", "NA"),
            }
        }
        println!();
    }
    println!("(PC, P, PBMF, PBM_FVG: larger is better; PE, XB, OS, I: smaller is better)");
    Ok(())
}
