//! End-to-end acceptance checks. Each test prints one `[PASS]` or `[FAIL]`
//! line (written straight to stderr so it survives output capture) and then
//! asserts the same verdict.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use jdcvi::bench::{
    alt_eval, classic_sweep, generate, load_csv, KRange, MixtureSpec, DEFAULT_SEEDS,
};
use jdcvi::clustering::FcmConfig;
use jdcvi::cvi::{index_i, pc, pe, CviIndex};
use jdcvi::density::{
    fit_gaussian, fit_kde, jd_gaussian, jd_kde, Divergence, GaussianModel, DEFAULT_DENSITY_FLOOR,
};
use jdcvi::partition::{CrispPartition, MembershipMatrix};
use jdcvi::similarity::{pair_counts, PairCounts, SimilarityMeasure};
use jdcvi::Dataset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

// Timed checks run one at a time so their clocks are not shared.
static TIMED: Mutex<()> = Mutex::new(());

fn timed() -> std::sync::MutexGuard<'static, ()> {
    TIMED.lock().unwrap_or_else(|e| e.into_inner())
}

fn verdict(label: &str, ok: bool, detail: impl AsRef<str>) {
    let tag = if ok { "PASS" } else { "FAIL" };
    let line = format!("[{tag}] {label}: {}\n", detail.as_ref());
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(ok, "{label}: {}", detail.as_ref());
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

fn shipped(name: &str) -> Dataset {
    let text = std::fs::read_to_string(data_dir().join(name)).unwrap();
    let spec: MixtureSpec = serde_json::from_str(&text).unwrap();
    generate(&spec).unwrap()
}

fn count_best(
    ds: &Dataset,
    range: KRange,
    checks: &[(CviIndex, usize)],
) -> (Vec<usize>, Vec<Vec<Option<usize>>>, Duration) {
    let start = Instant::now();
    let mut hits = vec![0; checks.len()];
    let mut picks = vec![Vec::new(); checks.len()];
    for &seed in DEFAULT_SEEDS.iter() {
        let cfg = FcmConfig::new(range.min).with_seed(seed);
        let sweep = classic_sweep(ds, range, &cfg, Divergence::Gaussian).unwrap();
        for (c, &(index, want)) in checks.iter().enumerate() {
            let got = sweep.best_k[&index];
            picks[c].push(got);
            if got == Some(want) {
                hits[c] += 1;
            }
        }
    }
    (hits, picks, start.elapsed())
}

fn fmt_picks(picks: &[Option<usize>]) -> String {
    picks
        .iter()
        .map(|p| p.map_or("-".to_string(), |k| k.to_string()))
        .collect::<Vec<_>>()
        .join(",")
}

#[test]
fn well_separated_fifteen_clusters() {
    let _guard = timed();
    let ds = shipped("s1.json");
    let (hits, picks, elapsed) = count_best(&ds, KRange::new(10, 20).unwrap(), &[(CviIndex::I, 15)]);
    let ok = hits[0] >= 9 && elapsed < Duration::from_secs(60);
    verdict(
        "well-separated 15 clusters",
        ok,
        format!(
            "I picks 15 on {}/10 seeds (need 9), picks [{}], {:.1} s (limit 60)",
            hits[0],
            fmt_picks(&picks[0]),
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn overlapping_fifteen_clusters() {
    let _guard = timed();
    let ds = shipped("s3.json");
    let checks = [(CviIndex::I, 15), (CviIndex::Pc, 10), (CviIndex::Pe, 10)];
    let (hits, picks, _) = count_best(&ds, KRange::new(10, 20).unwrap(), &checks);
    let ok = hits[0] >= 7 && hits[1] >= 9 && hits[2] >= 9;
    verdict(
        "overlapping 15 clusters",
        ok,
        format!(
            "I=15 on {}/10 (need 7) [{}]; PC=10 on {}/10 (need 9); PE=10 on {}/10 (need 9)",
            hits[0],
            fmt_picks(&picks[0]),
            hits[1],
            hits[2]
        ),
    );
}

#[test]
fn iris_three_clusters() {
    let _guard = timed();
    let ds = load_csv(data_dir().join("iris.csv")).unwrap();
    let (hits, picks, _) = count_best(&ds, KRange::new(2, 10).unwrap(), &[(CviIndex::I, 3)]);
    verdict(
        "iris three clusters",
        hits[0] >= 7,
        format!("I picks 3 on {}/10 seeds (need 7), picks [{}]", hits[0], fmt_picks(&picks[0])),
    );
}

fn group_models(ds: &Dataset) -> Vec<GaussianModel> {
    let labels = ds.labels().unwrap();
    let k = labels.iter().max().unwrap() + 1;
    (0..k)
        .map(|c| {
            let members: Vec<&[f64]> = ds
                .points()
                .zip(labels)
                .filter(|(_, &l)| l == c)
                .map(|(p, _)| p)
                .collect();
            fit_gaussian(&members).unwrap()
        })
        .collect()
}

#[test]
fn elongated_overlap_ordering() {
    let text = std::fs::read_to_string(data_dir().join("three_cluster.json")).unwrap();
    let spec: MixtureSpec = serde_json::from_str(&text).unwrap();
    let dist = |i: usize, j: usize| {
        let (a, b) = (&spec.components[i].mean, &spec.components[j].mean);
        a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
    };
    let geometry = (dist(0, 1) - 14.5).abs() < 1e-9 && (dist(1, 2) - 13.2).abs() < 1e-9;
    let models = group_models(&generate(&spec).unwrap());
    let ab = jd_gaussian(&models[0], &models[1]).unwrap();
    let bc = jd_gaussian(&models[1], &models[2]).unwrap();
    verdict(
        "separation ordering",
        geometry && ab > 2.0 * bc,
        format!("d_AB={:.1} d_BC={:.1}; JD(A,B)={ab:.3} JD(B,C)={bc:.3} ratio {:.2} (need > 2)", dist(0, 1), dist(1, 2), ab / bc),
    );
}

fn gauss_jordan_inverse(a: &[f64], d: usize) -> Vec<f64> {
    let w = 2 * d;
    let mut m = vec![0.0; d * w];
    for i in 0..d {
        m[i * w..i * w + d].copy_from_slice(&a[i * d..(i + 1) * d]);
        m[i * w + d + i] = 1.0;
    }
    for col in 0..d {
        let pivot = (col..d)
            .max_by(|&x, &y| m[x * w + col].abs().total_cmp(&m[y * w + col].abs()))
            .unwrap();
        for t in 0..w {
            m.swap(col * w + t, pivot * w + t);
        }
        let p = m[col * w + col];
        for t in 0..w {
            m[col * w + t] /= p;
        }
        for r in 0..d {
            if r != col {
                let f = m[r * w + col];
                for t in 0..w {
                    m[r * w + t] -= f * m[col * w + t];
                }
            }
        }
    }
    let mut inv = vec![0.0; d * d];
    for i in 0..d {
        inv[i * d..(i + 1) * d].copy_from_slice(&m[i * w + d..(i + 1) * w]);
    }
    inv
}

fn oracle_jd(ma: &[f64], sa: &[f64], mb: &[f64], sb: &[f64]) -> f64 {
    let d = ma.len();
    let (ia, ib) = (gauss_jordan_inverse(sa, d), gauss_jordan_inverse(sb, d));
    let trace = |inv: &[f64], s: &[f64]| {
        (0..d)
            .map(|i| (0..d).map(|t| inv[i * d + t] * s[t * d + i]).sum::<f64>())
            .sum::<f64>()
    };
    let delta: Vec<f64> = ma.iter().zip(mb).map(|(x, y)| x - y).collect();
    let quad = |inv: &[f64]| {
        (0..d)
            .map(|i| (0..d).map(|j| delta[i] * inv[i * d + j] * delta[j]).sum::<f64>())
            .sum::<f64>()
    };
    0.5 * (trace(&ia, sb) + trace(&ib, sa)) + 0.5 * (quad(&ia) + quad(&ib)) - d as f64
}

fn random_spd(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    let b: Vec<f64> = (0..d * d).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut s = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            s[i * d + j] = (0..d).map(|t| b[i * d + t] * b[j * d + t]).sum::<f64>();
        }
        s[i * d + i] += 0.5;
    }
    for i in 0..d {
        for j in 0..i {
            s[j * d + i] = s[i * d + j];
        }
    }
    s
}

#[test]
fn gaussian_divergence_correctness() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_self = 0.0f64;
    let mut asymmetric = 0;
    let mut negative = 0;
    let mut worst_oracle = 0.0f64;
    for _ in 0..1000 {
        let d = rng.random_range(1..=5);
        let ma: Vec<f64> = (0..d).map(|_| rng.random_range(-3.0..3.0)).collect();
        let mb: Vec<f64> = (0..d).map(|_| rng.random_range(-3.0..3.0)).collect();
        let (sa, sb) = (random_spd(&mut rng, d), random_spd(&mut rng, d));
        let a = GaussianModel::new(ma.clone(), sa.clone()).unwrap();
        let b = GaussianModel::new(mb.clone(), sb.clone()).unwrap();
        let ab = jd_gaussian(&a, &b).unwrap();
        let ba = jd_gaussian(&b, &a).unwrap();
        worst_self = worst_self.max(jd_gaussian(&a, &a).unwrap().abs());
        if ab.to_bits() != ba.to_bits() {
            asymmetric += 1;
        }
        if ab < 0.0 {
            negative += 1;
        }
        worst_oracle = worst_oracle.max((ab - oracle_jd(&ma, &sa, &mb, &sb)).abs());
    }
    let mut analytic_misses = 0;
    for _ in 0..200 {
        let d = rng.random_range(1..=5);
        let delta: Vec<f64> = (0..d).map(|_| rng.random_range(-6i32..=6) as f64).collect();
        let mut eye = vec![0.0; d * d];
        for i in 0..d {
            eye[i * d + i] = 1.0;
        }
        let a = GaussianModel::new(vec![0.0; d], eye.clone()).unwrap();
        let b = GaussianModel::new(delta.clone(), eye).unwrap();
        let want: f64 = delta.iter().map(|x| x * x).sum();
        if jd_gaussian(&a, &b).unwrap() != want {
            analytic_misses += 1;
        }
    }
    let ok = worst_self <= 1e-9
        && asymmetric == 0
        && negative == 0
        && worst_oracle <= 1e-8
        && analytic_misses == 0;
    verdict(
        "gaussian divergence",
        ok,
        format!(
            "max |JD(a,a)|={worst_self:.1e}, asymmetric={asymmetric}, negative={negative}, \
             max oracle gap={worst_oracle:.1e}, identity-cov misses={analytic_misses}/200"
        ),
    );
}

fn normal_cloud(rng: &mut ChaCha8Rng, n: usize, mean: &[f64]) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            mean.iter()
                .map(|m| m + Distribution::<f64>::sample(&StandardNormal, rng))
                .collect()
        })
        .collect()
}

#[test]
fn kde_agrees_with_closed_form() {
    let _guard = timed();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    let mut rows = Vec::new();
    for d in [1usize, 2] {
        for sep in [1.0, 3.0, 5.0] {
            let mut shift = vec![0.0; d];
            shift[0] = sep;
            let a = normal_cloud(&mut rng, 2000, &vec![0.0; d]);
            let b = normal_cloud(&mut rng, 2000, &shift);
            let a: Vec<&[f64]> = a.iter().map(Vec::as_slice).collect();
            let b: Vec<&[f64]> = b.iter().map(Vec::as_slice).collect();
            let g = jd_gaussian(&fit_gaussian(&a).unwrap(), &fit_gaussian(&b).unwrap()).unwrap();
            let k = jd_kde(&fit_kde(&a).unwrap(), &fit_kde(&b).unwrap(), DEFAULT_DENSITY_FLOOR).unwrap();
            let rel = (k - g).abs() / g.max(1.0);
            worst = worst.max(rel);
            rows.push(format!("d={d} sep={sep}: gauss={g:.3} kde={k:.3} rel={rel:.3}"));
        }
    }
    let elapsed = start.elapsed();
    verdict(
        "kde cross-check",
        worst <= 0.15 && elapsed < Duration::from_secs(10),
        format!("worst rel={worst:.3} (limit 0.15), {:.2} s (limit 10); {}", elapsed.as_secs_f64(), rows.join("; ")),
    );
}

#[test]
fn mle_recovers_parameters() {
    let mean = vec![1.0, -2.0, 0.5];
    let cov = vec![2.0, 0.3, 0.1, 0.3, 1.0, -0.2, 0.1, -0.2, 0.5];
    let truth = GaussianModel::new(mean.clone(), cov.clone()).unwrap();
    let l = truth.chol_factor();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let samples: Vec<Vec<f64>> = (0..10_000)
        .map(|_| {
            let z: Vec<f64> = (0..3).map(|_| StandardNormal.sample(&mut rng)).collect();
            (0..3)
                .map(|i| mean[i] + (0..=i).map(|t| l[(i, t)] * z[t]).sum::<f64>())
                .collect()
        })
        .collect();
    let refs: Vec<&[f64]> = samples.iter().map(Vec::as_slice).collect();
    let fit = fit_gaussian(&refs).unwrap();
    let mean_err = fit
        .mean()
        .iter()
        .zip(&mean)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let frob = (0..9)
        .map(|t| (fit.cov()[(t / 3, t % 3)] - cov[t]).powi(2))
        .sum::<f64>()
        .sqrt();
    verdict(
        "mle recovery",
        mean_err < 0.1 && frob < 0.2,
        format!("max mean error {mean_err:.4} (limit 0.1), covariance Frobenius error {frob:.4} (limit 0.2)"),
    );
}

fn brute_counts(x: &[usize], y: &[usize]) -> PairCounts {
    let mut pc = PairCounts { a: 0, b: 0, c: 0, d: 0 };
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            match (x[i] == x[j], y[i] == y[j]) {
                (true, true) => pc.a += 1,
                (false, false) => pc.b += 1,
                (true, false) => pc.c += 1,
                (false, true) => pc.d += 1,
            }
        }
    }
    pc
}

#[test]
fn similarity_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut mismatches = 0;
    for _ in 0..200 {
        let n = rng.random_range(1..=100);
        let (k1, k2) = (rng.random_range(1..=8), rng.random_range(1..=8));
        let x: Vec<usize> = (0..n).map(|_| rng.random_range(0..k1)).collect();
        let y: Vec<usize> = (0..n).map(|_| rng.random_range(0..k2)).collect();
        let got = pair_counts(&CrispPartition::new(x.clone(), k1).unwrap(), &CrispPartition::new(y.clone(), k2).unwrap()).unwrap();
        if got != brute_counts(&x, &y) {
            mismatches += 1;
        }
    }
    let mut identity_misses = 0;
    for _ in 0..50 {
        let n = rng.random_range(4..=60);
        // two fixed points keep at least one pair together and one apart
        let mut ids: Vec<usize> = vec![0, 0, 1];
        ids.extend((3..n).map(|_| rng.random_range(0..4)));
        let p = CrispPartition::new(ids, 4).unwrap();
        let pc = pair_counts(&p, &p).unwrap();
        for m in SimilarityMeasure::ALL {
            if m.evaluate(&pc).unwrap() != 1.0 {
                identity_misses += 1;
            }
        }
    }
    let pc = pair_counts(
        &CrispPartition::new(vec![0, 0, 1], 2).unwrap(),
        &CrispPartition::new(vec![0, 1, 1], 2).unwrap(),
    )
    .unwrap();
    let rand = SimilarityMeasure::Rand.evaluate(&pc).unwrap();
    verdict(
        "similarity oracle",
        mismatches == 0 && identity_misses == 0 && rand == 1.0 / 3.0,
        format!("brute-force mismatches {mismatches}/200, identity misses {identity_misses}, three-point Rand={rand:?}"),
    );
}

/// Index `I` of a 1D two-cluster partition in plain scalar arithmetic.
fn scalar_index(xs: &[f64], mask: u32) -> f64 {
    let group = |side: bool| -> Vec<f64> {
        xs.iter()
            .enumerate()
            .filter(|(j, _)| (mask >> j & 1 == 1) == side)
            .map(|(_, &x)| x)
            .collect()
    };
    let fit = |g: &[f64]| {
        let n = g.len() as f64;
        let mut mean = 0.0;
        for x in g {
            mean += x;
        }
        mean /= n;
        let mut var = 0.0;
        for x in g {
            let t = x - mean;
            var += t * t;
        }
        var /= n;
        let eps = (1e-8 * var / 1.0f64).max(1e-12);
        (mean, (var + eps).sqrt())
    };
    let (g0, g1) = (group(false), group(true));
    let ((m0, s0), (m1, s1)) = (fit(&g0), fit(&g1));
    let radius = |g: &[f64], c: f64| g.iter().map(|x| (x - c) * (x - c)).fold(f64::NEG_INFINITY, f64::max);
    let v = 0.0 + radius(&g0, m0) + radius(&g1, m1);
    let delta = m0 - m1;
    let r01 = s1 / s0;
    let r10 = s0 / s1;
    let q0 = delta / s0;
    let q1 = delta / s1;
    let jd = 0.5 * (r01 * r01 + r10 * r10) + 0.5 * (q0 * q0 + q1 * q1) - 1.0;
    v / (0.0 + jd + jd)
}

fn cluster_means(xs: &[f64], ids: &[usize]) -> Vec<f64> {
    let mut sum = [0.0; 2];
    let mut cnt = [0.0; 2];
    for (&x, &c) in xs.iter().zip(ids) {
        sum[c] += x;
        cnt[c] += 1.0;
    }
    vec![sum[0] / cnt[0], sum[1] / cnt[1]]
}

#[test]
fn index_bounds_and_bipartition_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bound_violations = 0;
    for _ in 0..500 {
        let k = rng.random_range(1..=8);
        let n = rng.random_range(1..=40);
        let mut u: Vec<f64> = (0..k * n).map(|_| rng.random_range(0.0..1.0)).collect();
        for j in 0..n {
            let s: f64 = (0..k).map(|i| u[i * n + j]).sum();
            for i in 0..k {
                u[i * n + j] /= s;
            }
        }
        let m = MembershipMatrix::new(u, (0..k).map(|i| i as f64).collect(), k, 1).unwrap();
        let (c, e, kf) = (pc(&m), pe(&m), k as f64);
        if !(c >= 1.0 / kf - 1e-12 && c <= 1.0 + 1e-12 && e >= -1e-12 && e <= kf.ln() + 1e-12) {
            bound_violations += 1;
        }
    }
    let mut checked = 0;
    let mut bit_mismatches = 0;
    for n in 2..=8usize {
        let xs: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
        let ds = Dataset::new("line", xs.clone(), 1).unwrap();
        for mask in 1..(1u32 << n) - 1 {
            let ids: Vec<usize> = (0..n).map(|j| (mask >> j & 1) as usize).collect();
            let centers = cluster_means(&xs, &ids);
            let p = CrispPartition::new(ids, 2).unwrap();
            let m = MembershipMatrix::from_crisp(&p, centers, 1).unwrap();
            let got = index_i(&ds, &m, Divergence::Gaussian).unwrap();
            checked += 1;
            if got.to_bits() != scalar_index(&xs, mask).to_bits() {
                bit_mismatches += 1;
            }
        }
    }
    verdict(
        "index bounds and bipartition oracle",
        bound_violations == 0 && bit_mismatches == 0,
        format!("PC/PE bound violations {bound_violations}/500; I bit mismatches {bit_mismatches}/{checked} bipartitions"),
    );
}

#[test]
fn alternative_methodology_table() {
    let _guard = timed();
    let ds = shipped("two_blobs.json");
    let runs = 20;
    let result = alt_eval(&ds, &[2, 3, 4], runs, &FcmConfig::new(2).with_seed(7), Divergence::Gaussian).unwrap();
    let table = result.tally(0..runs);
    let shape = table.len() == 4 && table.values().all(|row| row.len() == 8);
    let bounded = table.values().flat_map(|row| row.values()).all(|&c| c <= runs);
    let ari = result.count(SimilarityMeasure::AdjustedRand, CviIndex::I);
    verdict(
        "alternative methodology",
        shape && bounded && ari >= 18,
        format!("table {}x{}, counts bounded by {runs}: {bounded}; I ARI successes {ari}/{runs} (need 18)", table.len(), table.values().next().map_or(0, |r| r.len())),
    );
}

fn run_cli(args: &[&str], dir: &Path) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_jdcvi"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap();
    (out.status.code().unwrap_or(-1), out.stdout)
}

#[test]
fn cli_is_byte_reproducible() {
    let tmp = tempfile::tempdir().unwrap();
    let data = data_dir();
    let spec = data.join("two_blobs.json");
    let iris = data.join("iris.csv");
    let (spec, iris) = (spec.to_str().unwrap(), iris.to_str().unwrap());
    let cases: Vec<(&str, Vec<&str>, Option<&str>)> = vec![
        ("generate", vec!["generate", "--spec", spec, "--out", "OUT"], Some("d.csv")),
        ("cluster", vec!["cluster", "--data", iris, "--k", "3", "--m", "2", "--seed", "7", "--out", "OUT"], Some("m.json")),
        ("sweep", vec!["sweep", "--data", iris, "--k-min", "2", "--k-max", "6", "--divergence", "gaussian", "--seed", "7", "--out", "OUT"], Some("r.csv")),
        ("sweep json", vec!["sweep", "--data", iris, "--k-min", "2", "--k-max", "4", "--divergence", "kde", "--seed", "7", "--out", "OUT"], Some("r.json")),
        ("alt-eval", vec!["alt-eval", "--data", spec, "--runs", "6", "--k-list", "2,3,4", "--seed", "7", "--out", "OUT"], Some("t.csv")),
        ("jd labels", vec!["jd", "--data", iris, "--labels", "--pair", "0,1", "--backend", "kde"], None),
        ("jd fcm", vec!["jd", "--data", iris, "--k", "3", "--pair", "1,2", "--seed", "7"], None),
        ("similarity", vec!["similarity", "--p1", iris, "--p2", iris], None),
    ];
    let mut failures = Vec::new();
    for (name, args, file) in &cases {
        let mut outputs = Vec::new();
        let target = file.map(|f| tmp.path().join(f));
        let target_str = target.as_ref().map(|p| p.to_str().unwrap().to_string());
        let argv: Vec<&str> = args
            .iter()
            .map(|a| if *a == "OUT" { target_str.as_deref().unwrap() } else { *a })
            .collect();
        for _ in 0..2 {
            let (code, stdout) = run_cli(&argv, tmp.path());
            let written = match &target {
                Some(p) => {
                    let bytes = std::fs::read(p).unwrap_or_default();
                    let _ = std::fs::remove_file(p);
                    bytes
                }
                None => Vec::new(),
            };
            outputs.push((code, stdout, written));
        }
        let stable = outputs[0] == outputs[1];
        if !stable || outputs[0].0 != 0 || (file.is_some() && outputs[0].2.is_empty()) {
            failures.push(*name);
        }
    }
    verdict(
        "cli determinism",
        failures.is_empty(),
        format!("{} invocations compared, unstable or failing: {:?}", cases.len(), failures),
    );
}
