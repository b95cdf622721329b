//! Monte Carlo experiment harness.
//!
//! A sweep runs end-to-end retrieval trials over an (erasure probability,
//! rate) grid on one synthetic corpus, optionally pairs every Monte Carlo
//! point with the analytic estimate at the fixed repetition count `⌈1/R⌉`,
//! and serializes the resulting error curve as CSV.
//!
//! Determinism contract: given the same configuration and master seed, a
//! sweep produces byte-identical CSV at any parallelism level. Every trial
//! derives its own generator from the master seed (see [`crate::seed`]), and
//! per-point aggregation sums integer counts, which is order-independent.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{analytic_error_probability, AveragingMode};
use crate::coding::{decode, encode, transmit};
use crate::features::{apply_stop_mask, masked_model, term_frequency, StopWordSet};
use crate::numeric::ceil_with_slack;
use crate::retrieval::{idf, retrieve, Corpus, IdfVector};
use crate::seed;
use crate::vocab::{build_vocabulary, sample_document_counts, sample_term_counts, VocabularyModel};
use crate::Error;

/// How an error-curve row was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// End-to-end Monte Carlo trials.
    MonteCarlo,
    /// Pattern-averaged Gaussian formula on the model probabilities.
    Analytic,
    /// The same formula fed with empirical probabilities from ingested text.
    AnalyticEmpirical,
}

impl Method {
    fn order(self) -> u8 {
        match self {
            Method::MonteCarlo => 0,
            Method::Analytic => 1,
            Method::AnalyticEmpirical => 2,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::MonteCarlo => "montecarlo",
            Method::Analytic => "analytic",
            Method::AnalyticEmpirical => "analytic-empirical",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "montecarlo" => Ok(Method::MonteCarlo),
            "analytic" => Ok(Method::Analytic),
            "analytic-empirical" => Ok(Method::AnalyticEmpirical),
            other => Err(Error::CsvParse(format!("unknown method `{other}`"))),
        }
    }
}

/// One grid-point result.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveRow {
    pub epsilon: f64,
    pub rate: f64,
    pub method: Method,
    pub error_prob: f64,
    pub stderr: f64,
    /// Trials for Monte Carlo rows; evaluated patterns for analytic rows.
    pub samples: u64,
    pub ties: u64,
    pub seed: u64,
}

/// Ordered collection of grid-point results.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ErrorCurve {
    rows: Vec<CurveRow>,
}

impl ErrorCurve {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, row: CurveRow) {
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[CurveRow] {
        &self.rows
    }

    /// Canonical row order: method, then rate, then erasure probability.
    pub fn sort(&mut self) {
        self.rows.sort_by(|a, b| {
            a.method
                .order()
                .cmp(&b.method.order())
                .then(a.rate.total_cmp(&b.rate))
                .then(a.epsilon.total_cmp(&b.epsilon))
        });
    }

    /// Rows of one method, in canonical order.
    pub fn method_rows(&self, method: Method) -> impl Iterator<Item = &CurveRow> {
        self.rows.iter().filter(move |r| r.method == method)
    }
}

const CSV_HEADER: &str = "epsilon,rate,method,error_prob,stderr,samples,ties,seed";

fn real(v: f64) -> String {
    // 17 significant digits: enough to round-trip any f64 exactly.
    format!("{v:.16e}")
}

/// Write the curve as CSV: header plus one LF-terminated line per row,
/// reals at 17 significant digits.
pub fn write_csv<W: Write>(curve: &ErrorCurve, writer: &mut W) -> std::io::Result<()> {
    writer.write_all(CSV_HEADER.as_bytes())?;
    writer.write_all(b"\n")?;
    for row in curve.rows() {
        let line = format!(
            "{},{},{},{},{},{},{},{}\n",
            real(row.epsilon),
            real(row.rate),
            row.method,
            real(row.error_prob),
            real(row.stderr),
            row.samples,
            row.ties,
            row.seed,
        );
        writer.write_all(line.as_bytes())?;
    }
    Ok(())
}

/// Write the curve to a file, creating parent directories is the caller's
/// business; failures carry the path.
pub fn write_csv_file(curve: &ErrorCurve, path: &Path) -> Result<(), Error> {
    let io_err = |source| Error::Io {
        path: path.display().to_string(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut writer = BufWriter::new(file);
    write_csv(curve, &mut writer).map_err(io_err)?;
    writer.flush().map_err(io_err)
}

/// Parse a curve previously written by [`write_csv`].
pub fn parse_csv<R: Read>(reader: R) -> Result<ErrorCurve, Error> {
    let mut lines = BufReader::new(reader).lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::CsvParse("empty input".into()))?
        .map_err(|e| Error::CsvParse(e.to_string()))?;
    if header != CSV_HEADER {
        return Err(Error::CsvParse(format!("unexpected header `{header}`")));
    }
    let mut curve = ErrorCurve::new();
    for (lineno, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::CsvParse(e.to_string()))?;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(Error::CsvParse(format!(
                "line {}: expected 8 fields, found {}",
                lineno + 2,
                fields.len()
            )));
        }
        let bad = |what: &str| Error::CsvParse(format!("line {}: bad {what}", lineno + 2));
        curve.push(CurveRow {
            epsilon: fields[0].parse().map_err(|_| bad("epsilon"))?,
            rate: fields[1].parse().map_err(|_| bad("rate"))?,
            method: fields[2].parse()?,
            error_prob: fields[3].parse().map_err(|_| bad("error_prob"))?,
            stderr: fields[4].parse().map_err(|_| bad("stderr"))?,
            samples: fields[5].parse().map_err(|_| bad("samples"))?,
            ties: fields[6].parse().map_err(|_| bad("ties"))?,
            seed: fields[7].parse().map_err(|_| bad("seed"))?,
        });
    }
    Ok(curve)
}

/// Which query coordinates the stop mask removes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StopPolicy {
    /// The `k` most frequent terms (ranks `1..=k`).
    TopRanks(u32),
    /// An explicit rank list.
    Ranks(Vec<u32>),
}

impl StopPolicy {
    pub fn build(&self, dimension: u32) -> Result<StopWordSet, Error> {
        match self {
            StopPolicy::TopRanks(k) => {
                if *k > dimension {
                    return Err(Error::StopSetTooLarge {
                        requested: *k,
                        dimension,
                    });
                }
                StopWordSet::new(dimension, 1..=*k)
            }
            StopPolicy::Ranks(ranks) => StopWordSet::new(dimension, ranks.iter().copied()),
        }
    }
}

/// Full description of a synthetic experiment.
///
/// The defaults reproduce the reference setup: a 49000-term Zipf(1)
/// vocabulary, 50-term queries with the top 10 terms masked, two documents
/// of 10000 terms, rates 1 and 1/2, and 1000 trials per grid point.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub vocab_size: u32,
    pub alpha: f64,
    pub query_len: u32,
    pub stop: StopPolicy,
    pub documents: u32,
    pub doc_len: u32,
    pub rates: Vec<f64>,
    pub epsilons: Vec<f64>,
    pub trials: u32,
    pub pattern_budget: u64,
    pub master_seed: u64,
    /// Emit analytic rows next to the Monte Carlo ones (two-document corpora
    /// only).
    pub analytic: bool,
    /// Apply the stop mask to document vectors too. Off by default: the
    /// mask is defined on the query side.
    pub mask_documents: bool,
    /// Redraw the documents for every grid point instead of sharing one
    /// corpus across the sweep.
    pub redraw_documents: bool,
    /// Optional newline-delimited JSON replay log of every trial.
    pub replay_path: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            vocab_size: 49_000,
            alpha: 1.0,
            query_len: 50,
            stop: StopPolicy::TopRanks(10),
            documents: 2,
            doc_len: 10_000,
            rates: vec![0.5, 1.0],
            epsilons: (0..=10).map(|i| i as f64 / 10.0).collect(),
            trials: 1000,
            pattern_budget: 100_000,
            master_seed: 0,
            analytic: true,
            mask_documents: false,
            redraw_documents: false,
            replay_path: None,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.vocab_size == 0 {
            return bad("vocab_size must be at least 1".into());
        }
        if !self.alpha.is_finite() || self.alpha < 0.0 {
            return bad(format!(
                "alpha must be finite and nonnegative, got {}",
                self.alpha
            ));
        }
        if self.query_len == 0 {
            return bad("query_len must be at least 1".into());
        }
        if self.documents == 0 {
            return bad("documents must be at least 1".into());
        }
        if self.doc_len == 0 {
            return bad("doc_len must be at least 1".into());
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.pattern_budget == 0 {
            return bad("pattern_budget must be at least 1".into());
        }
        if self.rates.is_empty() {
            return bad("rate grid must not be empty".into());
        }
        if self.epsilons.is_empty() {
            return bad("epsilon grid must not be empty".into());
        }
        for &r in &self.rates {
            if !r.is_finite() || r <= 0.0 || r > 1.0 {
                return bad(format!("rate {r} outside (0, 1]"));
            }
        }
        for &e in &self.epsilons {
            if !e.is_finite() || !(0.0..=1.0).contains(&e) {
                return bad(format!("epsilon {e} outside [0, 1]"));
            }
        }
        if self.analytic && self.documents != 2 {
            return bad(format!(
                "analytic rows require exactly 2 documents, got {}",
                self.documents
            ));
        }
        match &self.stop {
            StopPolicy::TopRanks(k) if *k > self.vocab_size => {
                return bad(format!(
                    "stop_words {k} exceeds vocab_size {}",
                    self.vocab_size
                ));
            }
            StopPolicy::Ranks(ranks) => {
                if let Some(&r) = ranks.iter().find(|&&r| r == 0 || r > self.vocab_size) {
                    return bad(format!("stop rank {r} outside 1..={}", self.vocab_size));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// Outcome of one end-to-end trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    /// Winner under the transmitted (unerased) query vector.
    pub true_winner: usize,
    /// Winner under the reconstructed query vector.
    pub received_winner: usize,
    /// Whether the two winners differ.
    pub error: bool,
    pub true_tie: bool,
    pub received_tie: bool,
    /// Number of encoded symbols that lost every copy.
    pub erased: u32,
}

/// Run one trial: sample a query, mask it, encode at `rate`, cross the
/// channel at `epsilon`, decode, and retrieve with both the reconstructed
/// and the original vector. Deterministic in `trial_seed`.
#[allow(clippy::too_many_arguments)]
pub fn run_trial(
    vocab: &VocabularyModel,
    corpus: &Corpus,
    xi: &IdfVector,
    stop: &StopWordSet,
    query_len: u32,
    rate: f64,
    epsilon: f64,
    trial_seed: u64,
) -> Result<TrialOutcome, Error> {
    let (outcome, _) = run_trial_detailed(
        vocab, corpus, xi, stop, query_len, rate, epsilon, trial_seed, false,
    )?;
    Ok(outcome)
}

#[allow(clippy::too_many_arguments)]
fn run_trial_detailed(
    vocab: &VocabularyModel,
    corpus: &Corpus,
    xi: &IdfVector,
    stop: &StopWordSet,
    query_len: u32,
    rate: f64,
    epsilon: f64,
    trial_seed: u64,
    want_survivors: bool,
) -> Result<(TrialOutcome, Vec<u32>), Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
    let counts = sample_term_counts(vocab, query_len, &mut rng)?;
    let sent = apply_stop_mask(&term_frequency(&counts), stop);
    let truth = retrieve(&sent, corpus, xi);
    let stream = encode(&sent, rate)?;
    let pattern = transmit(&stream, epsilon, &mut rng)?;
    let received_vector = decode(&stream, &pattern);
    let received = retrieve(&received_vector, corpus, xi);
    let outcome = TrialOutcome {
        true_winner: truth.winner(),
        received_winner: received.winner(),
        error: truth.winner() != received.winner(),
        true_tie: truth.tie(),
        received_tie: received.tie(),
        erased: pattern.erased_count() as u32,
    };
    let survivors = if want_survivors {
        pattern.survivors().collect()
    } else {
        Vec::new()
    };
    Ok((outcome, survivors))
}

// Seed, outcome, and surviving symbol indices of one recorded trial.
type TrialDetail = (u64, TrialOutcome, Vec<u32>);

/// Monte Carlo estimate at one grid point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointEstimate {
    pub error_prob: f64,
    pub stderr: f64,
    pub errors: u64,
    /// Trials in which either decision tied; excluded from the error count.
    pub ties: u64,
    pub trials: u32,
}

/// Estimate the retrieval error rate from `trials` independent trials.
///
/// Trial `t` uses the generator seeded with `seed::child(point_seed, t)`;
/// trials run in parallel and integer counts are summed, so the estimate does
/// not depend on thread count or scheduling.
#[allow(clippy::too_many_arguments)]
pub fn estimate_error_rate(
    vocab: &VocabularyModel,
    corpus: &Corpus,
    xi: &IdfVector,
    stop: &StopWordSet,
    query_len: u32,
    rate: f64,
    epsilon: f64,
    trials: u32,
    point_seed: u64,
) -> Result<PointEstimate, Error> {
    let (estimate, _) = estimate_error_rate_detailed(
        vocab, corpus, xi, stop, query_len, rate, epsilon, trials, point_seed, false,
    )?;
    Ok(estimate)
}

#[allow(clippy::too_many_arguments)]
fn estimate_error_rate_detailed(
    vocab: &VocabularyModel,
    corpus: &Corpus,
    xi: &IdfVector,
    stop: &StopWordSet,
    query_len: u32,
    rate: f64,
    epsilon: f64,
    trials: u32,
    point_seed: u64,
    want_details: bool,
) -> Result<(PointEstimate, Vec<TrialDetail>), Error> {
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    let details: Vec<TrialDetail> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let trial_seed = seed::child(point_seed, u64::from(t));
            run_trial_detailed(
                vocab,
                corpus,
                xi,
                stop,
                query_len,
                rate,
                epsilon,
                trial_seed,
                want_details,
            )
            .map(|(outcome, survivors)| (trial_seed, outcome, survivors))
        })
        .collect::<Result<_, Error>>()?;
    let mut errors = 0u64;
    let mut ties = 0u64;
    for (_, outcome, _) in &details {
        let tied = outcome.true_tie || outcome.received_tie;
        ties += u64::from(tied);
        errors += u64::from(outcome.error && !tied);
    }
    let p = errors as f64 / trials as f64;
    let stderr = (p * (1.0 - p) / trials as f64).sqrt();
    let estimate = PointEstimate {
        error_prob: p,
        stderr,
        errors,
        ties,
        trials,
    };
    Ok((estimate, if want_details { details } else { Vec::new() }))
}

/// Result of a sweep: the curve, the averaging mode of each analytic point,
/// and any per-point failures (the sweep keeps going past them).
#[derive(Debug, Default)]
pub struct SweepReport {
    pub curve: ErrorCurve,
    /// `(rate, epsilon, mode)` per analytic row.
    pub analytic_modes: Vec<(f64, f64, AveragingMode)>,
    pub failures: Vec<String>,
}

#[derive(Serialize)]
struct ReplayRecord<'a> {
    v: u32,
    seed: u64,
    epsilon: f64,
    rate: f64,
    survivors: &'a [u32],
    true_winner: usize,
    received_winner: usize,
    error: bool,
    true_tie: bool,
    received_tie: bool,
}

struct SyntheticWorld {
    vocab: VocabularyModel,
    stop: StopWordSet,
    corpus: Corpus,
    xi: IdfVector,
}

fn build_world(config: &ExperimentConfig, corpus_seed: u64) -> Result<SyntheticWorld, Error> {
    let vocab = build_vocabulary(config.vocab_size, config.alpha)?;
    let stop = config.stop.build(config.vocab_size)?;
    let mut docs = Vec::with_capacity(config.documents as usize);
    for j in 0..config.documents {
        let mut rng = ChaCha8Rng::seed_from_u64(seed::child(corpus_seed, u64::from(j)));
        let counts = sample_document_counts(&vocab, config.doc_len, &mut rng)?;
        let mut fv = term_frequency(&counts);
        if config.mask_documents {
            fv = apply_stop_mask(&fv, &stop);
        }
        docs.push(fv);
    }
    let corpus = Corpus::new(config.vocab_size, docs)?;
    let xi = idf(&corpus);
    Ok(SyntheticWorld {
        vocab,
        stop,
        corpus,
        xi,
    })
}

/// Fixed repetition count used for analytic rows at nominal rate `R`.
pub fn analytic_repetitions(rate: f64) -> u32 {
    ceil_with_slack(1.0 / rate) as u32
}

/// Run the full synthetic sweep: Monte Carlo rows for every grid point and,
/// when enabled, analytic rows at `r = ⌈1/R⌉`.
pub fn sweep(config: &ExperimentConfig) -> Result<SweepReport, Error> {
    config.validate()?;
    let mut replay: Option<BufWriter<File>> = match &config.replay_path {
        Some(path) => Some(BufWriter::new(File::create(path).map_err(|source| {
            Error::Io {
                path: path.display().to_string(),
                source,
            }
        })?)),
        None => None,
    };

    let corpus_root = seed::child(config.master_seed, seed::stream::CORPUS);
    let shared_world = if config.redraw_documents {
        None
    } else {
        Some(build_world(config, corpus_root)?)
    };

    let mut report = SweepReport::default();
    for (rate_ix, &rate) in config.rates.iter().enumerate() {
        for (eps_ix, &epsilon) in config.epsilons.iter().enumerate() {
            let label = seed::point_label(rate_ix, eps_ix);
            let local_world;
            let world = match &shared_world {
                Some(w) => w,
                None => {
                    local_world = build_world(config, seed::child(corpus_root, label))?;
                    &local_world
                }
            };
            let point_seed =
                seed::child(seed::child(config.master_seed, seed::stream::TRIALS), label);
            let want_replay = replay.is_some();
            match estimate_error_rate_detailed(
                &world.vocab,
                &world.corpus,
                &world.xi,
                &world.stop,
                config.query_len,
                rate,
                epsilon,
                config.trials,
                point_seed,
                want_replay,
            ) {
                Ok((estimate, details)) => {
                    report.curve.push(CurveRow {
                        epsilon,
                        rate,
                        method: Method::MonteCarlo,
                        error_prob: estimate.error_prob,
                        stderr: estimate.stderr,
                        samples: u64::from(estimate.trials),
                        ties: estimate.ties,
                        seed: config.master_seed,
                    });
                    if let Some(writer) = replay.as_mut() {
                        for (trial_seed, outcome, survivors) in &details {
                            let record = ReplayRecord {
                                v: 1,
                                seed: *trial_seed,
                                epsilon,
                                rate,
                                survivors,
                                true_winner: outcome.true_winner,
                                received_winner: outcome.received_winner,
                                error: outcome.error,
                                true_tie: outcome.true_tie,
                                received_tie: outcome.received_tie,
                            };
                            let line =
                                serde_json::to_string(&record).expect("replay record serializes");
                            writeln!(writer, "{line}").map_err(|source| Error::Io {
                                path: config
                                    .replay_path
                                    .as_ref()
                                    .expect("replay path set")
                                    .display()
                                    .to_string(),
                                source,
                            })?;
                        }
                    }
                }
                Err(e) => report
                    .failures
                    .push(format!("montecarlo rate={rate} epsilon={epsilon}: {e}")),
            }
            if config.analytic {
                let analysis_seed = seed::child(
                    seed::child(config.master_seed, seed::stream::ANALYSIS),
                    label,
                );
                let mut rng = ChaCha8Rng::seed_from_u64(analysis_seed);
                let model = masked_model(&world.vocab, config.query_len, &world.stop);
                match analytic_error_probability(
                    world.corpus.document(0),
                    world.corpus.document(1),
                    &world.xi,
                    &model,
                    epsilon,
                    analytic_repetitions(rate),
                    config.pattern_budget,
                    &mut rng,
                ) {
                    Ok(estimate) => {
                        let samples = match estimate.mode {
                            AveragingMode::Exhaustive { patterns } => patterns,
                            AveragingMode::Sampled { budget } => budget,
                        };
                        report.curve.push(CurveRow {
                            epsilon,
                            rate,
                            method: Method::Analytic,
                            error_prob: estimate.probability,
                            stderr: estimate.stderr,
                            samples,
                            ties: 0,
                            seed: config.master_seed,
                        });
                        report.analytic_modes.push((rate, epsilon, estimate.mode));
                    }
                    Err(e) => report
                        .failures
                        .push(format!("analytic rate={rate} epsilon={epsilon}: {e}")),
                }
            }
        }
    }
    if let Some(mut writer) = replay {
        writer.flush().map_err(|source| Error::Io {
            path: config
                .replay_path
                .as_ref()
                .expect("replay path set")
                .display()
                .to_string(),
            source,
        })?;
    }
    report.curve.sort();
    Ok(report)
}

/// Analytic-only variant of [`sweep`] (no Monte Carlo trials), used by the
/// `analyze` command.
pub fn analytic_curve(config: &ExperimentConfig) -> Result<SweepReport, Error> {
    let mut cfg = config.clone();
    cfg.analytic = true;
    cfg.validate()?;
    let corpus_root = seed::child(cfg.master_seed, seed::stream::CORPUS);
    let world = build_world(&cfg, corpus_root)?;
    let model = masked_model(&world.vocab, cfg.query_len, &world.stop);
    let mut report = SweepReport::default();
    for (rate_ix, &rate) in cfg.rates.iter().enumerate() {
        for (eps_ix, &epsilon) in cfg.epsilons.iter().enumerate() {
            let label = seed::point_label(rate_ix, eps_ix);
            let analysis_seed =
                seed::child(seed::child(cfg.master_seed, seed::stream::ANALYSIS), label);
            let mut rng = ChaCha8Rng::seed_from_u64(analysis_seed);
            match analytic_error_probability(
                world.corpus.document(0),
                world.corpus.document(1),
                &world.xi,
                &model,
                epsilon,
                analytic_repetitions(rate),
                cfg.pattern_budget,
                &mut rng,
            ) {
                Ok(estimate) => {
                    let samples = match estimate.mode {
                        AveragingMode::Exhaustive { patterns } => patterns,
                        AveragingMode::Sampled { budget } => budget,
                    };
                    report.curve.push(CurveRow {
                        epsilon,
                        rate,
                        method: Method::Analytic,
                        error_prob: estimate.probability,
                        stderr: estimate.stderr,
                        samples,
                        ties: 0,
                        seed: cfg.master_seed,
                    });
                    report.analytic_modes.push((rate, epsilon, estimate.mode));
                }
                Err(e) => report
                    .failures
                    .push(format!("analytic rate={rate} epsilon={epsilon}: {e}")),
            }
        }
    }
    report.curve.sort();
    Ok(report)
}
