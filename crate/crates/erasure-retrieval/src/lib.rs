//! Document retrieval over a symbol erasure channel.
//!
//! This crate simulates a remote retrieval system in which a query is turned
//! into a sparse term-frequency feature vector, protected by a repetition code
//! whose redundancy follows each term's importance, sent over an erasure
//! channel, and matched against a document corpus with an IDF-weighted squared
//! L2 score. Alongside the simulator it implements the closed-form Gaussian
//! error analysis for the two-document case, so that Monte Carlo estimates and
//! analytic error curves can be cross-validated on the same configuration.
//!
//! The pipeline, end to end:
//!
//! ```text
//! query counts ─ TF ─ stop-word mask ─ encode ─ erasure channel ─ decode ─ retrieve
//!                                                                      │
//!                 Gaussian score model ── pattern-averaged error ──────┘
//! ```
//!
//! Modules follow the pipeline stages:
//!
//! - [`vocab`]: Zipf vocabularies, multinomial query/document sampling, and
//!   the exact multinomial moments.
//! - [`features`]: term-frequency vectors, stop-word masking, and the implicit
//!   Gaussian model of the masked query vector.
//! - [`coding`]: importance-weighted repetition encoding, the erasure channel,
//!   and decoding.
//! - [`retrieval`]: IDF weights, weighted squared-L2 scoring, and the argmin
//!   decision rule.
//! - [`analysis`]: the linear score expansion, exact score moments, normal
//!   CDFs, and the pattern-averaged analytic error probability.
//! - [`simulation`]: Monte Carlo sweeps over (erasure probability, rate)
//!   grids with CSV export.
//! - [`ingest`]: building the same experiment from user-supplied text files.
//! - [`cli`]: the `synth` / `analyze` / `real` command-line front end.
//!
//! Every sampling operation takes an explicit seeded generator; the library
//! never reads ambient randomness, so experiments are bit-reproducible. See
//! the `examples/` directory for one runnable program per capability.

pub mod analysis;
pub mod cli;
pub mod coding;
pub mod features;
pub mod ingest;
mod numeric;
pub mod retrieval;
pub mod seed;
pub mod simulation;
pub mod vocab;

use thiserror::Error;

/// Errors shared across the pipeline modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vocabulary size must be at least 1")]
    EmptyVocabulary,
    #[error("zipf exponent must be finite and nonnegative, got {0}")]
    InvalidExponent(f64),
    #[error("sample length must be at least 1")]
    EmptySample,
    #[error("feature weight at index {index} must be positive and finite, got {value}")]
    InvalidWeight { index: u32, value: f64 },
    #[error("index {index} outside vocabulary range 1..={dimension}")]
    IndexOutOfRange { index: u32, dimension: u32 },
    #[error("duplicate index {0} in sparse vector")]
    DuplicateIndex(u32),
    #[error("stop-word count {requested} exceeds vocabulary size {dimension}")]
    StopSetTooLarge { requested: u32, dimension: u32 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },
    #[error("probabilities must be nonnegative, finite, and sum to 1 (sum was {0})")]
    InvalidProbabilities(f64),
    #[error("code rate must lie in (0, 1], got {0}")]
    InvalidRate(f64),
    #[error("erasure probability must lie in [0, 1], got {0}")]
    InvalidErasureProbability(f64),
    #[error("corpus must contain at least one document")]
    EmptyCorpus,
    #[error("correlation must lie in [-1, 1], got {0}")]
    InvalidCorrelation(f64),
    #[error("computed correlation {0} exceeds [-1, 1] beyond rounding tolerance")]
    CorrelationOutOfBounds(f64),
    #[error("score variance is zero; the joint-Gaussian correlation is undefined")]
    DegenerateVariance,
    #[error("repetition count must be at least 1")]
    EmptyRepetitions,
    #[error("pattern budget must be at least 1")]
    EmptyPatternBudget,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid UTF-8 at byte offset {offset}")]
    InvalidUtf8 { offset: usize },
    #[error("document {index} contains no tokens")]
    EmptyDocument { index: usize },
    #[error("query {index} contains no tokens")]
    EmptyQuery { index: usize },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed CSV: {0}")]
    CsvParse(String),
}

pub use features::{FeatureVector, MaskedGaussianModel, StopWordSet};
pub use retrieval::{Corpus, IdfVector, SimilarityReport};
pub use vocab::{TermCounts, VocabularyModel};
