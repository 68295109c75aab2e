//! Command-line surface: data ingestion, configuration merging, run
//! orchestration, and report/plot-data emission.
//!
//! Exit codes: 0 success, 2 input error, 3 degenerate data, 4 configuration
//! error, 1 anything else (typically output I/O).

use crate::diagnostics::{histogram, kl_divergence, ks_two_sample, qq_points};
use crate::distributions::{self, DistSpec, FamilyId};
use crate::runner::{fit_data, AggregateReport, RunOptions};
use crate::sampler::{FitReport, SamplerConfig, SamplerError};
use clap::{Args, Parser, Subcommand};
use rand_chacha::rand_core::SeedableRng;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("degenerate data: {0}")]
    Degenerate(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Degenerate(_) => 3,
            CliError::Config(_) => 4,
            CliError::Output(_) => 1,
        }
    }
}

impl From<SamplerError> for CliError {
    fn from(e: SamplerError) -> Self {
        match e {
            SamplerError::DegenerateData => CliError::Degenerate(e.to_string()),
            SamplerError::Config(msg) => CliError::Config(msg),
            SamplerError::Dist(d) => CliError::Input(d.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "impulsefit",
    version,
    about = "Fits heavy-tailed 1-D data to stable, generalized Gaussian, or Student's t models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fit the three-family model to a data file and write a report.
    Fit(FitArgs),
    /// Generate synthetic data from one family.
    Synth(SynthArgs),
    /// Goodness-of-fit diagnostics of a data file against a fixed model.
    Diag(DiagArgs),
}

#[derive(Args, Debug)]
pub struct FitArgs {
    /// Input file: one real per line, '#' lines ignored.
    pub input: PathBuf,
    /// Number of independent chains.
    #[arg(long)]
    pub chains: Option<usize>,
    /// Iterations per chain.
    #[arg(long)]
    pub iters: Option<usize>,
    /// Iterations discarded per chain (default: half of the iterations).
    #[arg(long = "burn-in")]
    pub burn_in: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker-thread cap (0 = one per core).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Optional TOML file with defaults; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long = "out-dir", default_value = ".")]
    pub out_dir: PathBuf,
    /// Also write per-chain traces under <out-dir>/traces/.
    #[arg(long = "emit-traces")]
    pub emit_traces: bool,
    /// Histogram bins for the KL diagnostic.
    #[arg(long)]
    pub bins: Option<usize>,
    /// Record wall-clock time in the report (off by default so identical
    /// runs produce identical bytes).
    #[arg(long)]
    pub stamp: bool,
}

#[derive(Args, Debug)]
pub struct SynthArgs {
    /// Family: sas, gg or t.
    pub family: String,
    pub alpha: f64,
    pub gamma: f64,
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path; default <out-dir>/synth_<family>_<alpha>_<gamma>_<n>.txt
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long = "out-dir", default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Args, Debug)]
pub struct DiagArgs {
    pub input: PathBuf,
    /// Family: sas, gg or t.
    pub family: String,
    pub alpha: f64,
    pub gamma: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Model-side sample size for the KS test (default: data length).
    #[arg(long)]
    pub ks_samples: Option<usize>,
    #[arg(long)]
    pub bins: Option<usize>,
    #[arg(long = "out-dir", default_value = ".")]
    pub out_dir: PathBuf,
}

/// Optional TOML overrides; unknown keys are rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct FileConfig {
    p_life: Option<f64>,
    p_intra: Option<f64>,
    p_inter: Option<f64>,
    prior_a: Option<f64>,
    prior_b: Option<f64>,
    life_proposal_var: Option<f64>,
    laplace_scale: Option<f64>,
    grid_step: Option<f64>,
    alpha_max_sas: Option<f64>,
    alpha_max_gg: Option<f64>,
    alpha_max_t: Option<f64>,
    n_iter: Option<usize>,
    burn_in: Option<usize>,
    flom_divisor: Option<f64>,
    flom_safety: Option<f64>,
    seed: Option<u64>,
    chains: Option<usize>,
    jobs: Option<usize>,
    bins: Option<usize>,
}

/// Report document written by `fit`.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub input: String,
    pub data_points: usize,
    pub chains: usize,
    pub seed: u64,
    pub bins: usize,
    /// Unix seconds; present only with --stamp.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub created_unix: Option<u64>,
    pub config: SamplerConfig,
    pub aggregate: AggregateReport,
    pub per_chain: Vec<FitReport>,
}

/// Reads a data file: one real per line, blank lines and lines starting
/// with '#' ignored. Requires at least 10 finite values.
pub fn read_data_file(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line.parse().map_err(|e| {
            CliError::Input(format!(
                "{}:{}: cannot parse '{line}': {e}",
                path.display(),
                lineno + 1
            ))
        })?;
        if !v.is_finite() {
            return Err(CliError::Input(format!(
                "{}:{}: non-finite value {v}",
                path.display(),
                lineno + 1
            )));
        }
        values.push(v);
    }
    if values.len() < 10 {
        return Err(CliError::Input(format!(
            "{} holds {} values; need at least 10",
            path.display(),
            values.len()
        )));
    }
    Ok(values)
}

fn load_file_config(path: Option<&Path>) -> Result<FileConfig, CliError> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", p.display())))?;
            toml::from_str(&text)
                .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))
        }
    }
}

/// Defaults ← config file ← command-line flags.
fn merge_config(args: &FitArgs) -> Result<(SamplerConfig, RunOptions), CliError> {
    let file = load_file_config(args.config.as_deref())?;
    let mut cfg = SamplerConfig::default();
    macro_rules! apply {
        ($field:ident) => {
            if let Some(v) = file.$field {
                cfg.$field = v;
            }
        };
    }
    apply!(p_life);
    apply!(p_intra);
    apply!(p_inter);
    apply!(prior_a);
    apply!(prior_b);
    apply!(life_proposal_var);
    apply!(laplace_scale);
    apply!(grid_step);
    apply!(alpha_max_sas);
    apply!(alpha_max_gg);
    apply!(alpha_max_t);
    apply!(flom_divisor);
    apply!(flom_safety);
    apply!(seed);
    let mut burn_set = file.burn_in.is_some();
    if let Some(v) = file.n_iter {
        cfg.n_iter = v;
    }
    if let Some(v) = file.burn_in {
        cfg.burn_in = v;
    }
    if let Some(v) = args.iters {
        cfg.n_iter = v;
    }
    if let Some(v) = args.burn_in {
        cfg.burn_in = v;
        burn_set = true;
    }
    if !burn_set {
        cfg.burn_in = cfg.n_iter / 2;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    cfg.validate().map_err(CliError::from)?;
    let options = RunOptions {
        chains: args.chains.or(file.chains).unwrap_or(40),
        jobs: args.jobs.or(file.jobs).unwrap_or(0),
        bins: args.bins.or(file.bins).unwrap_or(100),
    };
    if options.chains == 0 {
        return Err(CliError::Config("need at least one chain".into()));
    }
    if options.bins < 2 {
        return Err(CliError::Config("need at least 2 histogram bins".into()));
    }
    Ok((cfg, options))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)
            .map_err(|e| CliError::Output(format!("{}: {e}", parent.display())))?;
    }
    fs::write(path, contents).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Output(format!("serialization: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// Runs the fit pipeline and writes report + plot data. Returns the manifest.
pub fn cmd_fit(args: &FitArgs) -> Result<RunManifest, CliError> {
    let data = read_data_file(&args.input)?;
    let (cfg, options) = merge_config(args)?;
    let outcome = fit_data(&data, &cfg, &options)?;
    let manifest = RunManifest {
        input: args.input.display().to_string(),
        data_points: data.len(),
        chains: options.chains,
        seed: cfg.seed,
        bins: options.bins,
        created_unix: args.stamp.then(|| {
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        }),
        config: cfg.clone(),
        aggregate: outcome.aggregate.clone(),
        per_chain: outcome.per_chain.clone(),
    };
    let dir = &args.out_dir;
    write_file(&dir.join("report.json"), &to_json(&manifest)?)?;

    let spec = outcome.aggregate.fitted_spec();
    let (lo, hi) = data
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| {
            (l.min(x), h.max(x))
        });
    let mut pdf = String::new();
    let mut cdf = String::new();
    for i in 0..512 {
        let x = lo + (hi - lo) * i as f64 / 511.0;
        let f = distributions::log_pdf(&spec, x)
            .map(f64::exp)
            .unwrap_or(f64::NAN);
        let _ = writeln!(pdf, "{x}\t{f}");
        let _ = writeln!(cdf, "{x}\t{}", distributions::cdf(&spec, x));
    }
    write_file(&dir.join("pdf.tsv"), &pdf)?;
    write_file(&dir.join("cdf.tsv"), &cdf)?;

    let mut hist_text = String::new();
    for (i, mass) in outcome.histogram.mass.iter().enumerate() {
        let center = 0.5 * (outcome.histogram.edges[i] + outcome.histogram.edges[i + 1]);
        let _ = writeln!(hist_text, "{center}\t{mass}");
    }
    write_file(&dir.join("hist.tsv"), &hist_text)?;

    let mut qq_rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
    qq_rng.set_stream((1 << 33) + 1);
    let qq = qq_points(&data, &spec, data.len(), &mut qq_rng)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let mut qq_text = String::new();
    for (x, y) in &qq {
        let _ = writeln!(qq_text, "{x}\t{y}");
    }
    write_file(&dir.join("qq.tsv"), &qq_text)?;

    if args.emit_traces {
        for (idx, trace) in outcome.traces.iter().enumerate() {
            let mut text = String::from("# iter\tk\talpha\tgamma\tmove\taccepted\n");
            for (i, ((family, alpha, gamma), mv)) in
                trace.states.iter().zip(&trace.moves).enumerate()
            {
                let _ = writeln!(
                    text,
                    "{i}\t{}\t{alpha}\t{gamma}\t{}\t{}",
                    family.code(),
                    mv.kind.label(),
                    u8::from(mv.accepted)
                );
            }
            write_file(&dir.join(format!("traces/chain_{idx:03}.tsv")), &text)?;
        }
    }
    Ok(manifest)
}

/// Sidecar metadata written next to synthetic data.
#[derive(Debug, Serialize, Deserialize)]
pub struct SynthMeta {
    pub family: FamilyId,
    pub alpha: f64,
    pub gamma: f64,
    pub n: usize,
    pub seed: u64,
}

/// Generates a synthetic series and writes it plus a metadata sidecar.
/// Returns the data path.
pub fn cmd_synth(args: &SynthArgs) -> Result<PathBuf, CliError> {
    let family = FamilyId::parse(&args.family).map_err(|e| CliError::Config(e.to_string()))?;
    let spec =
        DistSpec::new(family, args.alpha, args.gamma).map_err(|e| CliError::Config(e.to_string()))?;
    let defaults = SamplerConfig::default();
    if args.alpha > defaults.alpha_max(family) {
        return Err(CliError::Config(format!(
            "alpha {} exceeds the {} family bound {}",
            args.alpha,
            family.label(),
            defaults.alpha_max(family)
        )));
    }
    if args.n == 0 {
        return Err(CliError::Config("need n >= 1".into()));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
    let data = distributions::sample(&spec, args.n, &mut rng)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let path = args.out.clone().unwrap_or_else(|| {
        args.out_dir.join(format!(
            "synth_{}_{}_{}_{}.txt",
            family.label(),
            args.alpha,
            args.gamma,
            args.n
        ))
    });
    let mut text = String::with_capacity(data.len() * 20);
    for x in &data {
        let _ = writeln!(text, "{x}");
    }
    write_file(&path, &text)?;
    let meta = SynthMeta {
        family,
        alpha: args.alpha,
        gamma: args.gamma,
        n: args.n,
        seed: args.seed,
    };
    let meta_path = path.with_extension("meta.json");
    write_file(&meta_path, &to_json(&meta)?)?;
    Ok(path)
}

/// Diagnostics document written by `diag`.
#[derive(Debug, Serialize)]
pub struct DiagReport {
    pub input: String,
    pub spec: DistSpec,
    pub seed: u64,
    pub histogram: crate::diagnostics::Histogram,
    pub kl_divergence: f64,
    pub ks: crate::diagnostics::KsResult,
    pub qq: Vec<(f64, f64)>,
}

/// Computes all diagnostics of a data file against a fixed model and writes
/// them as one JSON document.
pub fn cmd_diag(args: &DiagArgs) -> Result<DiagReport, CliError> {
    let data = read_data_file(&args.input)?;
    let family = FamilyId::parse(&args.family).map_err(|e| CliError::Config(e.to_string()))?;
    let spec =
        DistSpec::new(family, args.alpha, args.gamma).map_err(|e| CliError::Config(e.to_string()))?;
    let bins = args.bins.unwrap_or(100);
    if bins < 2 {
        return Err(CliError::Config("need at least 2 histogram bins".into()));
    }
    let hist = histogram(&data, bins).map_err(|e| match e {
        distributions::DistError::InvalidParameter(m) => CliError::Degenerate(m),
        other => CliError::Input(other.to_string()),
    })?;
    let kl = kl_divergence(&hist, &spec);
    let m = args.ks_samples.unwrap_or(data.len());
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
    let ks = ks_two_sample(&data, &spec, m, &mut rng)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let mut qq_rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
    qq_rng.set_stream(1);
    let qq = qq_points(&data, &spec, data.len(), &mut qq_rng)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let report = DiagReport {
        input: args.input.display().to_string(),
        spec,
        seed: args.seed,
        histogram: hist,
        kl_divergence: kl,
        ks,
        qq,
    };
    write_file(&args.out_dir.join("diagnostics.json"), &to_json(&report)?)?;
    Ok(report)
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Fit(args) => {
            let manifest = cmd_fit(&args)?;
            eprintln!(
                "fit: {} chains -> {} (alpha={:.4}, gamma={:.4}), KL={:.4}, KS p={:.4}",
                manifest.chains,
                manifest.aggregate.family.label(),
                manifest.aggregate.alpha_hat,
                manifest.aggregate.gamma_hat,
                manifest.aggregate.diagnostics.kl_divergence,
                manifest.aggregate.diagnostics.ks_p_value
            );
            Ok(())
        }
        Command::Synth(args) => {
            let path = cmd_synth(&args)?;
            eprintln!("synth: wrote {}", path.display());
            Ok(())
        }
        Command::Diag(args) => {
            let report = cmd_diag(&args)?;
            eprintln!(
                "diag: KL={:.4}, KS score={:.4}, KS p={:.4}",
                report.kl_divergence, report.ks.score, report.ks.p_value
            );
            Ok(())
        }
    }
}
