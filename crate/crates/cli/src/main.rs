//! Command-line harness for the semi-supervised preference trainer.
//!
//! Subcommands:
//!
//! - `gen-toy` — emit word-length toy datasets as JSONL
//! - `train` — run an objective from a config file (flags override)
//! - `eval` — score a checkpoint on held-out pairs, print a JSON report
//! - `snapshot` — dump normalized reward densities and the threshold as CSV
//! - `verify-theorem` — Monte-Carlo check of the separation bound
//!
//! Exit codes: 0 success, 1 usage error, 2 data/config error,
//! 3 verification failure.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sspo_core::corpus::{self, ToySpec};
use sspo_core::eval::{pairwise_accuracy, snapshot};
use sspo_core::threshold::TheoremCheck;
use sspo_core::trainer::{self, Checkpoint};
use sspo_core::{metrics, PolicyParams, TrainConfig, Vocab};

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(
    name = "sspo",
    version,
    about = "Semi-supervised preference optimization on a toy character policy"
)]
struct Cli {
    /// Seed for all randomized subcommands; eval and snapshot are
    /// deterministic and ignore it.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Generate word-length toy datasets (paired/unpaired/test JSONL).
    GenToy(GenToyArgs),
    /// Train a policy and write metrics plus checkpoints.
    Train(TrainArgs),
    /// Evaluate a checkpoint on held-out pairs; prints a JSON report.
    Eval(EvalArgs),
    /// Write a reward-distribution snapshot CSV from a checkpoint.
    Snapshot(SnapshotArgs),
    /// Monte-Carlo check that a reward threshold separates winning from
    /// losing samples at least as often as the tail bound promises.
    VerifyTheorem(VerifyArgs),
}

#[derive(Args)]
struct GenToyArgs {
    #[arg(long)]
    n_paired: usize,
    #[arg(long)]
    n_unpaired: usize,
    #[arg(long, default_value_t = 1000)]
    n_test: usize,
    #[arg(long, default_value_t = 10)]
    words_per_prompt: usize,
    /// Fraction of paired labels to swap (0 disables noise).
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    /// Output directory for paired.jsonl, unpaired.jsonl, test.jsonl.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct TrainArgs {
    /// Flat key-value config file; omitted fields keep their defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    paired: PathBuf,
    #[arg(long)]
    unpaired: Option<PathBuf>,
    /// Held-out paired set for model selection; when absent, --paired is
    /// split by --train-frac.
    #[arg(long)]
    validation: Option<PathBuf>,
    #[arg(long, default_value_t = 0.8)]
    train_frac: f64,
    /// Output directory for checkpoints and (unless overridden by
    /// SSPO_METRICS_DIR) metrics streams.
    #[arg(long, default_value = ".")]
    out: PathBuf,

    // Config overrides, mirroring the config file keys.
    #[arg(long)]
    objective: Option<String>,
    #[arg(long)]
    epochs: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    delta: Option<String>,
    #[arg(long)]
    p_win: Option<String>,
    #[arg(long)]
    gamma0: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    gamma_min: Option<String>,
    #[arg(long)]
    momentum: Option<String>,
    #[arg(long)]
    grid_points: Option<String>,
    #[arg(long)]
    batch_paired: Option<String>,
    #[arg(long)]
    batch_unpaired: Option<String>,
    #[arg(long)]
    optimizer: Option<String>,
    #[arg(long)]
    learning_rate: Option<String>,
    #[arg(long)]
    lambda_sft: Option<String>,
    #[arg(long)]
    init_scale: Option<String>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    checkpoint: PathBuf,
    /// Held-out paired JSONL; read only here, never during training.
    #[arg(long)]
    test: PathBuf,
    #[arg(long, default_value_t = 10.0)]
    beta: f64,
}

#[derive(Args)]
struct SnapshotArgs {
    #[arg(long)]
    checkpoint: PathBuf,
    /// Paired JSONL sample whose rewards are plotted.
    #[arg(long)]
    paired: PathBuf,
    #[arg(long, default_value_t = 10.0)]
    beta: f64,
    #[arg(long, default_value = "snapshot.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, allow_negative_numbers = true)]
    mu_l: f64,
    #[arg(long, allow_negative_numbers = true)]
    mu_w: f64,
    /// Standard deviation of both populations; --sigma-l/--sigma-w
    /// override per side.
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    sigma_l: Option<f64>,
    #[arg(long)]
    sigma_w: Option<f64>,
    #[arg(long)]
    n_l: usize,
    /// Margin below/above the means; --t1/--t2 override per side.
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    t1: Option<f64>,
    #[arg(long)]
    t2: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    /// Monte-Carlo slack in binomial standard errors.
    #[arg(long, default_value_t = 3.0)]
    slack_sigmas: f64,
}

/// A failure with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn data(err: impl Display) -> Self {
        Failure { code: EXIT_DATA, message: err.to_string() }
    }
}

impl From<sspo_core::Error> for Failure {
    fn from(err: sspo_core::Error) -> Self {
        Failure::data(err)
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure::data(err)
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help/--version print to stdout and succeed; anything else
            // is a usage error.
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let seed = cli.seed;
    match cli.command {
        Command::GenToy(args) => gen_toy(args, seed.unwrap_or(0)),
        Command::Train(args) => train(args, seed),
        Command::Eval(args) => eval(args),
        Command::Snapshot(args) => snapshot_cmd(args),
        Command::VerifyTheorem(args) => verify_theorem(args, seed.unwrap_or(0)),
    }
}

fn gen_toy(args: GenToyArgs, seed: u64) -> Result<u8, Failure> {
    let spec = ToySpec {
        n_paired: args.n_paired,
        n_unpaired: args.n_unpaired,
        n_test: args.n_test,
        words_per_prompt: args.words_per_prompt,
        vocabulary: corpus::default_vocabulary(),
        seed,
    };
    let data = corpus::generate_toy(&spec)?;
    let paired = if args.noise > 0.0 {
        corpus::inject_noise(&data.paired, args.noise, seed)?
    } else {
        data.paired
    };
    std::fs::create_dir_all(&args.out)?;
    corpus::save_paired(&args.out.join("paired.jsonl"), &paired)?;
    corpus::save_unpaired(&args.out.join("unpaired.jsonl"), &data.unpaired)?;
    corpus::save_paired(&args.out.join("test.jsonl"), &data.test)?;
    eprintln!(
        "wrote {} paired ({}% noisy), {} unpaired, {} test examples to {}",
        paired.len(),
        (args.noise * 100.0).round(),
        data.unpaired.len(),
        data.test.len(),
        args.out.display()
    );
    Ok(0)
}

fn train(args: TrainArgs, seed: Option<u64>) -> Result<u8, Failure> {
    let mut config = match &args.config {
        Some(path) => TrainConfig::from_file(path)?,
        None => TrainConfig::default(),
    };
    let overrides: [(&str, &Option<String>); 16] = [
        ("objective", &args.objective),
        ("epochs", &args.epochs),
        ("beta", &args.beta),
        ("delta", &args.delta),
        ("p_win", &args.p_win),
        ("gamma0", &args.gamma0),
        ("lambda", &args.lambda),
        ("gamma_min", &args.gamma_min),
        ("momentum", &args.momentum),
        ("grid_points", &args.grid_points),
        ("batch_paired", &args.batch_paired),
        ("batch_unpaired", &args.batch_unpaired),
        ("optimizer", &args.optimizer),
        ("learning_rate", &args.learning_rate),
        ("lambda_sft", &args.lambda_sft),
        ("init_scale", &args.init_scale),
    ];
    for (key, value) in overrides {
        if let Some(value) = value {
            config.set(key, value)?;
        }
    }
    if let Some(seed) = seed {
        config.seed = seed;
    }
    config.validate()?;

    let paired = corpus::load_paired(&args.paired)?;
    let unpaired = match &args.unpaired {
        Some(path) => corpus::load_unpaired(path)?,
        None => Vec::new(),
    };
    let (train_set, validation) = match &args.validation {
        Some(path) => (paired, corpus::load_paired(path)?),
        None => corpus::split(&paired, args.train_frac, config.seed)?,
    };

    let outcome = trainer::train(&config, &train_set, &unpaired, &validation)?;

    std::fs::create_dir_all(&args.out)?;
    let metrics_dir = match std::env::var_os("SSPO_METRICS_DIR") {
        Some(dir) => {
            let dir = PathBuf::from(dir);
            std::fs::create_dir_all(&dir)?;
            dir
        }
        None => args.out.clone(),
    };
    let csv_path = metrics_dir.join("metrics.csv");
    metrics::write_csv(&csv_path, &outcome.metrics)?;
    metrics::write_jsonl(&metrics_dir.join("metrics.jsonl"), &outcome.metrics)?;
    let best_path = args.out.join("best.ckpt");
    outcome.best.save(&best_path)?;
    outcome.final_state.save(&args.out.join("final.ckpt"))?;

    let summary = serde_json::json!({
        "objective": config.objective.to_string(),
        "steps": outcome.final_state.step,
        "best_validation_loss": outcome.best_validation_loss,
        "best_checkpoint": best_path,
        "metrics_csv": csv_path,
    });
    println!("{summary}");
    Ok(0)
}

fn load_policy(path: &Path) -> Result<(PolicyParams, Checkpoint), Failure> {
    let checkpoint = Checkpoint::load(path)?;
    Ok((checkpoint.params.clone(), checkpoint))
}

fn eval(args: EvalArgs) -> Result<u8, Failure> {
    let (params, _) = load_policy(&args.checkpoint)?;
    let test = corpus::load_paired(&args.test)?;
    let report = pairwise_accuracy(&params, &Vocab::default(), &test, args.beta)?;
    println!("{}", serde_json::to_string(&report).expect("serializable report"));
    Ok(0)
}

fn snapshot_cmd(args: SnapshotArgs) -> Result<u8, Failure> {
    let (params, checkpoint) = load_policy(&args.checkpoint)?;
    let paired = corpus::load_paired(&args.paired)?;
    let snap = snapshot(
        &params,
        &Vocab::default(),
        &paired,
        &checkpoint.threshold,
        args.beta,
        checkpoint.step,
    )?;
    snap.write_csv(&args.out)?;
    eprintln!(
        "wrote snapshot of {} pairs at step {} to {}",
        paired.len(),
        snap.step,
        args.out.display()
    );
    Ok(0)
}

fn verify_theorem(args: VerifyArgs, seed: u64) -> Result<u8, Failure> {
    let pick = |side: Option<f64>, shared: Option<f64>, name: &str| {
        side.or(shared).ok_or_else(|| Failure {
            code: EXIT_DATA,
            message: format!("missing --{name} (or the shared flag it defaults from)"),
        })
    };
    let check = TheoremCheck {
        mu_l: args.mu_l,
        mu_w: args.mu_w,
        sigma_l: pick(args.sigma_l, args.sigma, "sigma-l")?,
        sigma_w: pick(args.sigma_w, args.sigma, "sigma-w")?,
        n_l: args.n_l,
        t1: pick(args.t1, args.t, "t1")?,
        t2: pick(args.t2, args.t, "t2")?,
    };
    let report = check.run(args.trials, seed)?;
    let pass = report.meets_bound(args.slack_sigmas);
    let output = serde_json::json!({
        "alpha_bound": report.alpha_bound,
        "empirical_separation_prob": report.empirical_separation_prob,
        "interval_separation_prob": report.interval_separation_prob,
        "trials": report.trials,
        "required": 1.0 - report.alpha_bound,
        "pass": pass,
    });
    println!("{output}");
    if pass {
        Ok(0)
    } else {
        Ok(EXIT_VERIFY)
    }
}
