//! Command-line front end: `synth`, `analyze`, and `real`.
//!
//! Configuration resolves in three layers: built-in defaults (the reference
//! experiment), then an optional `key = value` config file, then command-line
//! flags. Progress goes to standard error; CSV data goes to `--out` or
//! standard output, nothing else touches stdout.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::ingest::{self, StopPolicy as IngestStopPolicy};
use crate::simulation::{
    analytic_curve, sweep, write_csv, write_csv_file, ErrorCurve, ExperimentConfig, StopPolicy,
    SweepReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Simulate and analyze document retrieval over a symbol erasure channel.
#[derive(Debug, Parser)]
#[command(name = "erasure-retrieval", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Monte Carlo sweep on a synthetic Zipf corpus (plus analytic rows).
    Synth(CommonArgs),
    /// Analytic error curve only, no Monte Carlo trials.
    Analyze(CommonArgs),
    /// Channel experiment on user-supplied documents and queries.
    Real(RealArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Config file of `key = value` lines; flags override file values.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write the CSV here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Master seed; every random stream derives from it.
    #[arg(long, value_name = "U64")]
    seed: Option<u64>,
    /// Comma-separated erasure probabilities, e.g. `0,0.25,0.5`.
    #[arg(long, value_name = "LIST")]
    epsilon: Option<String>,
    /// Comma-separated code rates in (0, 1], e.g. `1,0.5`.
    #[arg(long, value_name = "LIST")]
    rate: Option<String>,
    /// Monte Carlo trials per grid point.
    #[arg(long, value_name = "U32")]
    trials: Option<u32>,
    /// Worker threads (default: machine parallelism).
    #[arg(long, value_name = "U32")]
    threads: Option<u32>,
}

#[derive(Debug, Args)]
struct RealArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Query file, one query per line; blank lines are ignored.
    #[arg(long, value_name = "PATH")]
    queries: PathBuf,
    /// Optional stop-word file, one term per line (default: the
    /// `stop_words` most frequent corpus terms).
    #[arg(long, value_name = "PATH")]
    stop_words: Option<PathBuf>,
    /// Document files, one document per file.
    #[arg(value_name = "DOC", required = true)]
    docs: Vec<PathBuf>,
}

/// A failure carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Usage or configuration problem (exit 2).
    Config(String),
    /// Failure while running the experiment or writing output (exit 1).
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_USAGE,
            CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Runtime(m) => m,
        }
    }
}

/// Parse `args` and run the selected command. Returns the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Synth(args) => cmd_synth(&args),
        Command::Analyze(args) => cmd_analyze(&args),
        Command::Real(args) => cmd_real(&args),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

/// Run the synthetic sweep and emit CSV.
fn cmd_synth(args: &CommonArgs) -> Result<(), CliError> {
    let config = resolve_config(args)?;
    let report = with_thread_pool(args.threads, || sweep(&config))?;
    finish(args.out.as_deref(), report)
}

/// Run the analytic-only curve and emit CSV.
fn cmd_analyze(args: &CommonArgs) -> Result<(), CliError> {
    let config = resolve_config(args)?;
    let report = with_thread_pool(args.threads, || analytic_curve(&config))?;
    finish(args.out.as_deref(), report)
}

/// Build a bundle from text files and run the channel experiment on it.
fn cmd_real(args: &RealArgs) -> Result<(), CliError> {
    let config = resolve_config(&args.common)?;
    let unreadable: Vec<String> = args
        .docs
        .iter()
        .chain(Some(&args.queries))
        .chain(args.stop_words.as_ref())
        .filter(|p| !p.is_file())
        .map(|p| p.display().to_string())
        .collect();
    if !unreadable.is_empty() {
        return Err(CliError::Config(format!(
            "unreadable input file(s): {}",
            unreadable.join(", ")
        )));
    }
    let docs: Vec<String> = args
        .docs
        .iter()
        .map(|p| read_text(p))
        .collect::<Result<_, _>>()?;
    for (path, text) in args.docs.iter().zip(&docs) {
        if ingest::tokenize(text).is_empty() {
            return Err(CliError::Config(format!(
                "{}: document contains no tokens",
                path.display()
            )));
        }
    }
    let queries: Vec<String> = read_text(&args.queries)?
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(str::to_owned)
        .collect();
    if queries.is_empty() {
        return Err(CliError::Config(format!(
            "{}: query file is empty",
            args.queries.display()
        )));
    }
    let policy = match &args.stop_words {
        Some(path) => {
            IngestStopPolicy::Terms(read_text(path)?.lines().map(str::to_owned).collect())
        }
        None => {
            let k = match config.stop {
                StopPolicy::TopRanks(k) => k,
                StopPolicy::Ranks(ref ranks) => ranks.len() as u32,
            };
            IngestStopPolicy::TopK(k)
        }
    };
    let bundle = ingest::build_real_bundle(&docs, &queries, &policy)
        .map_err(|e| CliError::Config(e.to_string()))?;
    eprintln!(
        "ingested {} documents, {} queries, vocabulary of {} terms",
        bundle.corpus().len(),
        bundle.queries().len(),
        bundle.vocabulary_size()
    );
    let report = with_thread_pool(args.common.threads, || {
        ingest::run_real_experiment(&bundle, &config)
    })?;
    finish(args.common.out.as_deref(), report)
}

fn read_text(path: &Path) -> Result<String, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    String::from_utf8(bytes).map_err(|e| {
        CliError::Config(format!(
            "{}: invalid UTF-8 at byte offset {}",
            path.display(),
            e.utf8_error().valid_up_to()
        ))
    })
}

fn with_thread_pool<T>(
    threads: Option<u32>,
    body: impl FnOnce() -> Result<T, crate::Error> + Send,
) -> Result<T, CliError>
where
    T: Send,
{
    let run = |body: Box<dyn FnOnce() -> Result<T, crate::Error> + Send>| match threads {
        Some(0) => Err(CliError::Config("threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n as usize)
                .build()
                .map_err(|e| CliError::Runtime(format!("thread pool: {e}")))?;
            pool.install(body).map_err(map_run_error)
        }
        None => body().map_err(map_run_error),
    };
    run(Box::new(body))
}

fn map_run_error(e: crate::Error) -> CliError {
    match e {
        crate::Error::InvalidConfig(_) => CliError::Config(e.to_string()),
        other => CliError::Runtime(other.to_string()),
    }
}

/// Print per-point summaries to stderr and the CSV to `out` or stdout.
fn finish(out: Option<&Path>, report: SweepReport) -> Result<(), CliError> {
    for row in report.curve.rows() {
        eprintln!(
            "epsilon={} rate={} method={} error_prob={:.6} stderr={:.6} samples={} ties={}",
            row.epsilon, row.rate, row.method, row.error_prob, row.stderr, row.samples, row.ties
        );
    }
    for (rate, epsilon, mode) in &report.analytic_modes {
        eprintln!("analytic point rate={rate} epsilon={epsilon}: {mode}");
    }
    emit(out, &report.curve)?;
    if report.failures.is_empty() {
        Ok(())
    } else {
        let mut msg = String::from("some grid points failed:");
        for f in &report.failures {
            let _ = write!(msg, "\n  {f}");
        }
        Err(CliError::Runtime(msg))
    }
}

fn emit(out: Option<&Path>, curve: &ErrorCurve) -> Result<(), CliError> {
    match out {
        Some(path) => write_csv_file(curve, path).map_err(|e| CliError::Runtime(e.to_string())),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write_csv(curve, &mut lock)
                .and_then(|()| lock.flush())
                .map_err(|e| CliError::Runtime(format!("stdout: {e}")))
        }
    }
}

/// Defaults, overlaid with the config file, overlaid with flags.
fn resolve_config(args: &CommonArgs) -> Result<ExperimentConfig, CliError> {
    let mut config = ExperimentConfig::default();
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("config file {}: {e}", path.display())))?;
        apply_config_file(&mut config, &text)?;
    }
    if let Some(seed) = args.seed {
        config.master_seed = seed;
    }
    if let Some(list) = &args.epsilon {
        config.epsilons =
            parse_list(list).map_err(|e| CliError::Config(format!("--epsilon: {e}")))?;
    }
    if let Some(list) = &args.rate {
        config.rates = parse_list(list).map_err(|e| CliError::Config(format!("--rate: {e}")))?;
    }
    if let Some(trials) = args.trials {
        config.trials = trials;
    }
    config
        .validate()
        .map_err(|e| CliError::Config(e.to_string()))?;
    Ok(config)
}

fn parse_list(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| format!("`{t}` is not a number"))
        })
        .collect::<Result<Vec<f64>, String>>()
        .and_then(|v| {
            if v.is_empty() {
                Err("empty list".into())
            } else {
                Ok(v)
            }
        })
}

/// Apply `key = value` lines. `#` starts a comment; blank lines are skipped.
fn apply_config_file(config: &mut ExperimentConfig, text: &str) -> Result<(), CliError> {
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!(
                "config line {}: expected `key = value`",
                lineno + 1
            ))
        })?;
        let key = key.trim();
        let value = value.trim();
        let bad = |what: &str| {
            CliError::Config(format!("config key `{key}` (line {}): {what}", lineno + 1))
        };
        match key {
            "vocab_size" => {
                config.vocab_size = value
                    .parse()
                    .map_err(|_| bad("expected a positive integer"))?
            }
            "alpha" => config.alpha = value.parse().map_err(|_| bad("expected a real number"))?,
            "query_len" => {
                config.query_len = value
                    .parse()
                    .map_err(|_| bad("expected a positive integer"))?
            }
            "stop_words" => {
                config.stop = StopPolicy::TopRanks(
                    value
                        .parse()
                        .map_err(|_| bad("expected a nonnegative integer"))?,
                )
            }
            "documents" => {
                config.documents = value
                    .parse()
                    .map_err(|_| bad("expected a positive integer"))?
            }
            "doc_len" => {
                config.doc_len = value
                    .parse()
                    .map_err(|_| bad("expected a positive integer"))?
            }
            "trials" => {
                config.trials = value
                    .parse()
                    .map_err(|_| bad("expected a positive integer"))?
            }
            "epsilon" => config.epsilons = parse_list(value).map_err(|e| bad(&e))?,
            "rate" => config.rates = parse_list(value).map_err(|e| bad(&e))?,
            "pattern_budget" => {
                config.pattern_budget = value
                    .parse()
                    .map_err(|_| bad("expected a positive integer"))?
            }
            "seed" => config.master_seed = value.parse().map_err(|_| bad("expected a u64"))?,
            "analytic" => {
                config.analytic = parse_bool(value).ok_or_else(|| bad("expected true or false"))?
            }
            "mask_documents" => {
                config.mask_documents =
                    parse_bool(value).ok_or_else(|| bad("expected true or false"))?
            }
            "redraw_documents" => {
                config.redraw_documents =
                    parse_bool(value).ok_or_else(|| bad("expected true or false"))?
            }
            "replay" => config.replay_path = Some(PathBuf::from(value)),
            other => {
                return Err(CliError::Config(format!(
                    "unknown config key `{other}` (line {})",
                    lineno + 1
                )))
            }
        }
    }
    Ok(())
}

fn parse_bool(value: &str) -> Option<bool> {
    match value {
        "true" | "1" | "yes" | "on" => Some(true),
        "false" | "0" | "no" | "off" => Some(false),
        _ => None,
    }
}
