//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on a usage error, 2 on a data error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;

use crate::bench::{
    alt_eval, classic_sweep, generate, load_csv, load_partition, recipe, render, save_csv,
    KRange, MixtureSpec, ReportFormat,
};
use crate::clustering::{fcm, FcmConfig, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::cvi::fit_cluster_models;
use crate::dataset::Dataset;
use crate::density::Divergence;
use crate::error::Error;
use crate::partition::{harden, CrispPartition};
use crate::similarity::{pair_counts, SimilarityMeasure};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "jdcvi",
    version,
    about = "Cluster validity indexes, fuzzy c-means, and CVI benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample a labelled dataset from a Gaussian mixture spec
    Generate(GenerateArgs),
    /// Run fuzzy c-means and write memberships and centers as JSON
    Cluster(ClusterArgs),
    /// Cluster at every k of a range and report every index per k
    Sweep(SweepArgs),
    /// Count how often each index picks the partition closest to the labels
    AltEval(AltEvalArgs),
    /// Print the Jeffrey divergence between two clusters
    Jd(JdArgs),
    /// Print Rand, FM, Jaccard and ARI between two partitions
    Similarity(SimilarityArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["spec", "recipe"])))]
struct GenerateArgs {
    /// Mixture spec JSON file
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
    /// Shipped recipe name: s1, s2, s3, s4, r15, three-cluster
    #[arg(long, value_name = "NAME")]
    recipe: Option<String>,
    /// Output dataset CSV
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    /// Override the spec seed
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct FcmArgs {
    /// Fuzzifier
    #[arg(long, default_value_t = 2.0)]
    m: f64,
    /// Convergence tolerance on center displacement
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Iteration cap
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    /// Seed for every random choice
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl FcmArgs {
    fn config(&self, k: usize) -> FcmConfig {
        FcmConfig {
            k,
            m: self.m,
            max_iter: self.max_iter,
            tol: self.tol,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Args)]
struct ClusterArgs {
    /// Dataset CSV, or a mixture spec JSON to sample
    #[arg(long, value_name = "FILE")]
    data: PathBuf,
    /// Number of clusters
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    fcm: FcmArgs,
    /// Output JSON (stdout when omitted)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Dataset CSV, or a mixture spec JSON to sample
    #[arg(long, value_name = "FILE")]
    data: PathBuf,
    /// Smallest k
    #[arg(long, default_value_t = 2)]
    k_min: usize,
    /// Largest k
    #[arg(long, default_value_t = 10)]
    k_max: usize,
    /// Density backend for index I: gaussian or kde
    #[arg(long, default_value_t = Divergence::Gaussian)]
    divergence: Divergence,
    #[command(flatten)]
    fcm: FcmArgs,
    /// Report file (stdout when omitted)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// csv or json (default: from the --out extension, else csv)
    #[arg(long)]
    format: Option<String>,
}

#[derive(Debug, Args)]
struct AltEvalArgs {
    /// Labelled dataset CSV, or a mixture spec JSON to sample
    #[arg(long, value_name = "FILE")]
    data: PathBuf,
    /// Number of runs
    #[arg(long, default_value_t = 100)]
    runs: usize,
    /// Candidate cluster counts, comma separated [default: 2..=10]
    #[arg(long, value_delimiter = ',', value_name = "K,K,...")]
    k_list: Vec<usize>,
    /// Density backend for index I: gaussian or kde
    #[arg(long, default_value_t = Divergence::Gaussian)]
    divergence: Divergence,
    #[command(flatten)]
    fcm: FcmArgs,
    /// Report file (stdout when omitted)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// csv or json (default: from the --out extension, else csv)
    #[arg(long)]
    format: Option<String>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("partition").required(true).args(["labels", "k"])))]
struct JdArgs {
    /// Dataset CSV, or a mixture spec JSON to sample
    #[arg(long, value_name = "FILE")]
    data: PathBuf,
    /// Use the dataset's label column as the partition
    #[arg(long)]
    labels: bool,
    /// Cluster with fuzzy c-means at this k and harden
    #[arg(long)]
    k: Option<usize>,
    /// The two cluster ids
    #[arg(long, value_delimiter = ',', num_args = 1, required = true, value_name = "I,J")]
    pair: Vec<usize>,
    /// Density backend: gaussian or kde
    #[arg(long, default_value_t = Divergence::Gaussian)]
    backend: Divergence,
    #[command(flatten)]
    fcm: FcmArgs,
}

#[derive(Debug, Args)]
struct SimilarityArgs {
    /// First partition CSV (a `label` column or a single column of ids)
    #[arg(long, value_name = "FILE")]
    p1: PathBuf,
    /// Second partition CSV
    #[arg(long, value_name = "FILE")]
    p2: PathBuf,
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `argv` (program name first), runs the subcommand, and returns the
/// exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(a, out),
        Command::Cluster(a) => cmd_cluster(a, out),
        Command::Sweep(a) => cmd_sweep(a, out, err),
        Command::AltEval(a) => cmd_alt_eval(a, out),
        Command::Jd(a) => cmd_jd(a, out),
        Command::Similarity(a) => cmd_similarity(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Data(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DATA
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read_spec(path: &Path) -> Result<MixtureSpec, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

/// A `.json` path is read as a mixture spec and sampled; anything else is a CSV.
fn load_data(path: &Path) -> Result<Dataset, Error> {
    let is_spec = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    if is_spec {
        generate(&read_spec(path)?)
    } else {
        load_csv(path)
    }
}

fn write_output(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Outcome {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::io(p, e).into()),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::io(Path::new("<stdout>"), e).into()),
    }
}

fn report_format(flag: Option<&str>, path: Option<&Path>) -> Result<ReportFormat, Failure> {
    match flag {
        Some(f) => f
            .parse()
            .map_err(|_| usage(format!("--format must be csv or json, got `{f}`"))),
        None => Ok(path.map_or(ReportFormat::Csv, ReportFormat::from_path)),
    }
}

fn check_fcm(a: &FcmArgs) -> Outcome {
    if !(a.m > 1.0 && a.m.is_finite()) {
        return Err(usage(format!("--m must be > 1, got {}", a.m)));
    }
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(usage(format!("--tol must be > 0, got {}", a.tol)));
    }
    if a.max_iter == 0 {
        return Err(usage("--max-iter must be >= 1"));
    }
    Ok(())
}

fn cmd_generate(a: GenerateArgs, out: &mut dyn Write) -> Outcome {
    let mut spec = match (&a.spec, &a.recipe) {
        (Some(path), _) => read_spec(path)?,
        (None, Some(name)) => recipe(name, 0)
            .ok_or_else(|| usage(format!("--recipe: unknown recipe `{name}`")))?,
        (None, None) => return Err(usage("one of --spec or --recipe is required")),
    };
    if let Some(seed) = a.seed {
        spec.seed = seed;
    }
    let ds = generate(&spec)?;
    save_csv(&ds, &a.out)?;
    let _ = writeln!(out, "wrote {} points in {} dimensions to {}", ds.n(), ds.dim(), a.out.display());
    Ok(())
}

#[derive(Serialize)]
struct ClusterOutput {
    k: usize,
    m: f64,
    seed: u64,
    iterations: usize,
    converged: bool,
    objective: f64,
    centers: Vec<Vec<f64>>,
    /// `k` rows of `n` memberships.
    memberships: Vec<Vec<f64>>,
    assignment: Vec<usize>,
}

fn cmd_cluster(a: ClusterArgs, out: &mut dyn Write) -> Outcome {
    check_fcm(&a.fcm)?;
    if a.k == 0 {
        return Err(usage("--k must be >= 1"));
    }
    let ds = load_data(&a.data)?;
    let cfg = a.fcm.config(a.k);
    let r = fcm(&ds, &cfg)?;
    let m = &r.membership;
    let body = ClusterOutput {
        k: cfg.k,
        m: cfg.m,
        seed: cfg.seed,
        iterations: r.iterations,
        converged: r.converged,
        objective: r.objective,
        centers: m.centers().chunks_exact(m.dim()).map(<[f64]>::to_vec).collect(),
        memberships: (0..m.k()).map(|i| m.row(i).to_vec()).collect(),
        assignment: harden(m).assignment().to_vec(),
    };
    let mut text = serde_json::to_string_pretty(&body).map_err(Error::from)?;
    text.push('\n');
    write_output(&text, a.out.as_deref(), out)
}

fn cmd_sweep(a: SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    check_fcm(&a.fcm)?;
    let range = KRange::new(a.k_min, a.k_max)
        .map_err(|_| usage(format!("--k-min/--k-max: need 2 <= k-min <= k-max, got {}..{}", a.k_min, a.k_max)))?;
    let format = report_format(a.format.as_deref(), a.out.as_deref())?;
    let ds = load_data(&a.data)?;
    let result = classic_sweep(&ds, range, &a.fcm.config(range.min), a.divergence)?;
    for rep in &result.per_k {
        let i = rep.get(crate::cvi::CviIndex::I);
        let _ = writeln!(err, "k = {:>3}  I = {}", rep.k, i.map_or("NA".to_string(), |v| format!("{v:.6e}")));
    }
    let text = render(&result, format)?;
    write_output(&text, a.out.as_deref(), out)
}

fn cmd_alt_eval(a: AltEvalArgs, out: &mut dyn Write) -> Outcome {
    check_fcm(&a.fcm)?;
    if a.runs == 0 {
        return Err(usage("--runs must be >= 1"));
    }
    let ks = if a.k_list.is_empty() { (2..=10).collect() } else { a.k_list.clone() };
    if ks.contains(&0) {
        return Err(usage("--k-list entries must be >= 1"));
    }
    let format = report_format(a.format.as_deref(), a.out.as_deref())?;
    let ds = load_data(&a.data)?;
    let result = alt_eval(&ds, &ks, a.runs, &a.fcm.config(ks[0]), a.divergence)?;
    let text = render(&result, format)?;
    write_output(&text, a.out.as_deref(), out)
}

fn cmd_jd(a: JdArgs, out: &mut dyn Write) -> Outcome {
    check_fcm(&a.fcm)?;
    let [i, j] = a.pair[..] else {
        return Err(usage(format!("--pair takes two cluster ids, got {}", a.pair.len())));
    };
    if i == j {
        return Err(usage("--pair needs two different cluster ids"));
    }
    let ds = load_data(&a.data)?;
    let partition = if a.labels {
        if ds.labels().is_none() {
            return Err(Error::MissingLabels(a.data.display().to_string()).into());
        }
        CrispPartition::from_labels(&ds)?
    } else {
        let k = a.k.unwrap_or(2);
        harden(&fcm(&ds, &a.fcm.config(k))?.membership)
    };
    if i.max(j) >= partition.k() {
        return Err(usage(format!(
            "--pair: cluster ids must be below {}, got {i},{j}",
            partition.k()
        )));
    }
    let models = fit_cluster_models(&ds, &partition, a.backend)?;
    let jd = models[i].jeffrey(&models[j])?;
    let _ = writeln!(out, "{jd:?}");
    Ok(())
}

fn cmd_similarity(a: SimilarityArgs, out: &mut dyn Write) -> Outcome {
    let p1 = load_partition(&a.p1)?;
    let p2 = load_partition(&a.p2)?;
    let pc = pair_counts(&p1, &p2)?;
    let values: Vec<String> = SimilarityMeasure::ALL
        .iter()
        .map(|m| m.evaluate(&pc).map_or("NA".to_string(), |v| format!("{v}")))
        .collect();
    let _ = writeln!(out, "{}", values.join(" "));
    Ok(())
}
