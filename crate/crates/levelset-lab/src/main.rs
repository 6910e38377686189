//! `levelset-lab` — config-driven experiments over Lévy-type symbols,
//! subordination indices, potential-theoretic classifiers, path simulation,
//! and fractal dimension estimation.
//!
//! Exit codes: 0 = all gates pass, 1 = gate failure, 2 = usage/config error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use levelset_lab::experiment::{
    run_experiment, write_path_binary, CsvCell, CsvTable, ExperimentConfig, ModelConfig,
    TargetConfig,
};
use levelset_lab::fractal::{
    box_counting_dim, hawkes_probe_dim, level_set_times, suggest_band, DimensionEstimate,
};
use levelset_lab::simulate::{
    sample_levy_type, sample_stable_subordinator, sample_symmetric_stable, PathGrid, PathSample,
    SchemeTag, SeedInfo,
};

#[derive(Parser)]
#[command(name = "levelset-lab", version, about = "Symbols, indices, classifiers and fractal dimensions of Lévy-type level sets")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct RunArgs {
    /// Experiment config (JSON)
    #[arg(long)]
    config: PathBuf,
    /// Override the config's master seed
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for summary.json and CSV tables
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum SymbolCmd {
    /// Tabulate r, q, q^U, q^L, q^* to CSV with a κ/α/β summary
    Report(RunArgs),
}

#[derive(Args)]
struct IndicesArgs {
    /// Full experiment config (JSON); alternative to --model/--d
    #[arg(long, conflicts_with_all = ["model", "d"])]
    config: Option<PathBuf>,
    /// Model file (JSON), used with --d
    #[arg(long, requires = "d")]
    model: Option<PathBuf>,
    /// d-set exponent of the target
    #[arg(long)]
    d: Option<f64>,
    /// Ambient dimension (defaults to the model's)
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Symbol tabulation and envelope report
    Symbol {
        #[command(subcommand)]
        cmd: SymbolCmd,
    },
    /// Subordination indices γ*, γ_inf, γ_sup and dimension bounds
    Indices(IndicesArgs),
    /// Kato class, polarity, regularity and recurrence classifiers
    Classify(RunArgs),
    /// Subordinator law validation (Laplace, closed-form KS, scaling)
    SubordinatorValidate(RunArgs),
    /// Zero-level-set dimension experiment
    ZeroLevelDim(RunArgs),
    /// Collision-times dimension experiment
    CollisionTimesDim(RunArgs),
    /// Collision-set spatial dimension experiment
    CollisionSetDim(RunArgs),
    /// Level-set dimension bounds against a d-set target
    LevelSetBounds(RunArgs),
    /// Run whatever experiment the config names
    Run(RunArgs),
    /// Sample paths to binary/CSV files
    Simulate(RunArgs),
    /// Estimate the dimension of a level set extracted from a stored path
    Dim(RunArgs),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum SchemeConfig {
    SymmetricStable { alpha: f64 },
    Subordinator { gamma: f64 },
    LevyType { model: ModelConfig },
}

fn default_format() -> String {
    "both".into()
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimulateConfig {
    scheme: SchemeConfig,
    dt: f64,
    steps: usize,
    #[serde(default = "one_path")]
    paths: usize,
    #[serde(default = "default_sim_seed")]
    seed: u64,
    /// "binary", "csv" or "both"
    #[serde(default = "default_format")]
    format: String,
}

fn one_path() -> usize {
    1
}
fn default_sim_seed() -> u64 {
    1
}
fn default_method() -> String {
    "box".into()
}
fn default_c_eps() -> f64 {
    1.0
}
fn default_probe_samples() -> usize {
    400
}
fn default_gamma_grid() -> Vec<f64> {
    (2..=16).map(|i| 0.05 * i as f64).collect()
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DimConfig {
    /// Binary path file produced by `simulate`
    input: PathBuf,
    #[serde(default)]
    target: TargetConfig,
    /// "box" or "hawkes"
    #[serde(default = "default_method")]
    method: String,
    /// Explicit extraction ε (overrides c_eps·Δt^{1/α})
    #[serde(default)]
    eps: Option<f64>,
    #[serde(default = "default_c_eps")]
    c_eps: f64,
    /// Stability index for the ε scaling; defaults to the path's scheme tag
    #[serde(default)]
    alpha: Option<f64>,
    #[serde(default)]
    k_min: Option<u32>,
    #[serde(default)]
    k_max: Option<u32>,
    #[serde(default = "default_gamma_grid")]
    gamma_grid: Vec<f64>,
    #[serde(default = "default_probe_samples")]
    samples: usize,
    #[serde(default = "default_sim_seed")]
    seed: u64,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("LEVELSET_LAB_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        } else {
            eprintln!("error: LEVELSET_LAB_THREADS must be an integer");
            return ExitCode::from(2);
        }
    }
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<bool> {
    match cli.cmd {
        Cmd::Symbol {
            cmd: SymbolCmd::Report(args),
        } => run_named(args, Some("symbol-report")),
        Cmd::Indices(args) => run_indices(args),
        Cmd::Classify(args) => run_named(args, Some("classify")),
        Cmd::SubordinatorValidate(args) => run_named(args, Some("subordinator-validate")),
        Cmd::ZeroLevelDim(args) => run_named(args, Some("zero-level-dim")),
        Cmd::CollisionTimesDim(args) => run_named(args, Some("collision-times-dim")),
        Cmd::CollisionSetDim(args) => run_named(args, Some("collision-set-dim")),
        Cmd::LevelSetBounds(args) => run_named(args, Some("level-set-bounds")),
        Cmd::Run(args) => run_named(args, None),
        Cmd::Simulate(args) => run_simulate(args),
        Cmd::Dim(args) => run_dim(args),
    }
}

fn run_named(args: RunArgs, expect: Option<&str>) -> anyhow::Result<bool> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", args.config.display()))?;
    let mut cfg = ExperimentConfig::from_json(&text)?;
    if let Some(name) = expect {
        if cfg.name() != name {
            anyhow::bail!(
                "config names experiment '{}', but the subcommand runs '{name}'",
                cfg.name()
            );
        }
    }
    if let Some(seed) = args.seed {
        cfg.set_seed(seed);
    }
    let report = run_experiment(&cfg)?;
    let written = report.write_to(&args.out)?;
    println!(
        "{}: {} (seed {}, hash {})",
        report.experiment,
        if report.pass { "PASS" } else { "FAIL" },
        report.seed,
        report.config_hash
    );
    for p in written {
        println!("  wrote {}", p.display());
    }
    Ok(report.pass)
}

fn run_indices(args: IndicesArgs) -> anyhow::Result<bool> {
    if let Some(config) = args.config {
        return run_named(
            RunArgs {
                config,
                seed: args.seed,
                out: args.out,
            },
            Some("indices"),
        );
    }
    let (model_path, d) = match (args.model, args.d) {
        (Some(m), Some(d)) => (m, d),
        _ => anyhow::bail!("indices needs either --config or both --model and --d"),
    };
    let text = std::fs::read_to_string(&model_path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", model_path.display()))?;
    let mut model: ModelConfig = serde_json::from_str(&text)
        .map_err(|e| anyhow::anyhow!("malformed model config: {e}"))?;
    if let Some(n) = args.n {
        model.n = n;
    }
    let cfg_json = serde_json::json!({
        "experiment": "indices",
        "model": model,
        "d": d,
    });
    let mut cfg = ExperimentConfig::from_json(&cfg_json.to_string())?;
    if let Some(seed) = args.seed {
        cfg.set_seed(seed);
    }
    let report = run_experiment(&cfg)?;
    let written = report.write_to(&args.out)?;
    println!(
        "indices: {} gamma_star={} gamma_inf={} gamma_sup={}",
        if report.pass { "PASS" } else { "FAIL" },
        report.summary["gamma_star"],
        report.summary["gamma_inf"],
        report.summary["gamma_sup"]
    );
    for p in written {
        println!("  wrote {}", p.display());
    }
    Ok(report.pass)
}

fn run_simulate(args: RunArgs) -> anyhow::Result<bool> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", args.config.display()))?;
    let cfg: SimulateConfig = serde_json::from_str(&text)
        .map_err(|e| anyhow::anyhow!("malformed simulate config: {e}"))?;
    if !matches!(cfg.format.as_str(), "binary" | "csv" | "both") {
        anyhow::bail!("format must be binary | csv | both");
    }
    std::fs::create_dir_all(&args.out)?;
    let grid = PathGrid::new(cfg.dt, cfg.steps)?;
    let seed = args.seed.unwrap_or(cfg.seed);
    let model = match &cfg.scheme {
        SchemeConfig::LevyType { model } => Some(model.build()?),
        _ => None,
    };
    for i in 0..cfg.paths {
        let s = SeedInfo {
            master: seed,
            path_index: i as u64,
        };
        let path: PathSample = match &cfg.scheme {
            SchemeConfig::SymmetricStable { alpha } => sample_symmetric_stable(*alpha, grid, s)?,
            SchemeConfig::Subordinator { gamma } => sample_stable_subordinator(*gamma, grid, s)?,
            SchemeConfig::LevyType { .. } => {
                sample_levy_type(model.as_ref().expect("built above"), grid, s)?
            }
        };
        if cfg.format != "csv" {
            let p = args.out.join(format!("path-{i:04}.bin"));
            let mut f = std::fs::File::create(&p)?;
            write_path_binary(&path, &mut f)?;
            println!("wrote {}", p.display());
        }
        if cfg.format != "binary" {
            let p = args.out.join(format!("path-{i:04}.csv"));
            std::fs::write(&p, levelset_lab::experiment::report::path_to_csv(&path))?;
            println!("wrote {}", p.display());
        }
    }
    Ok(true)
}

fn run_dim(args: RunArgs) -> anyhow::Result<bool> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", args.config.display()))?;
    let cfg: DimConfig =
        serde_json::from_str(&text).map_err(|e| anyhow::anyhow!("malformed dim config: {e}"))?;
    let f = std::fs::File::open(&cfg.input)
        .map_err(|e| anyhow::anyhow!("cannot open {}: {e}", cfg.input.display()))?;
    let path = levelset_lab::experiment::read_path_binary(std::io::BufReader::new(f))?;

    let alpha = cfg.alpha.or(match path.scheme {
        SchemeTag::SymmetricStable { alpha } => Some(alpha),
        _ => None,
    });
    let eps = match cfg.eps {
        Some(e) => e,
        None => {
            let a = alpha.ok_or_else(|| {
                anyhow::anyhow!("dim needs 'alpha' or 'eps' when the path scheme carries no index")
            })?;
            levelset_lab::fractal::extraction_epsilon(path.grid().dt, a, cfg.c_eps)
        }
    };
    let target = cfg.target.build()?;
    let set = level_set_times(&path, &target, eps)?;

    let est: DimensionEstimate = match cfg.method.as_str() {
        "box" => {
            let (dk_min, dk_max) = suggest_band(&set);
            box_counting_dim(&set, cfg.k_min.unwrap_or(dk_min), cfg.k_max.unwrap_or(dk_max))?
        }
        "hawkes" => hawkes_probe_dim(&set, &cfg.gamma_grid, cfg.samples, cfg.seed)?,
        other => anyhow::bail!("method must be box | hawkes, got '{other}'"),
    };

    std::fs::create_dir_all(&args.out)?;
    let table = match est.method {
        levelset_lab::fractal::DimMethod::BoxCount => {
            let mut t = CsvTable::new(&["k", "log2_count"]);
            for &(k, c) in &est.table {
                t.row(&[CsvCell::Float(k), CsvCell::Float(c)]);
            }
            t
        }
        levelset_lab::fractal::DimMethod::HawkesProbe => {
            let mut t = CsvTable::new(&["gamma", "p_hat"]);
            for &(g, p) in &est.table {
                t.row(&[CsvCell::Float(g), CsvCell::Float(p)]);
            }
            t
        }
    };
    let scale_csv = args.out.join("scales.csv");
    std::fs::write(&scale_csv, table.finish())?;
    let summary = serde_json::json!({
        "estimate": est.estimate,
        "std_error": est.std_error,
        "band": est.band,
        "interval": est.interval,
        "method": est.method,
        "points": set.len(),
        "epsilon": eps,
        "flags": est.flags,
    });
    let summary_path = args.out.join("dim.json");
    std::fs::write(&summary_path, serde_json::to_string_pretty(&summary)?)?;
    println!(
        "dim: estimate {} ± {} ({} points), wrote {} and {}",
        est.estimate,
        est.std_error,
        set.len(),
        summary_path.display(),
        scale_csv.display()
    );
    Ok(true)
}
