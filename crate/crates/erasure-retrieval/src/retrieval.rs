//! IDF weighting, weighted squared-L2 scoring, and the argmin decision rule.

use crate::features::{merged, FeatureVector};
use crate::Error;

/// An ordered collection of document TF vectors over one vocabulary.
///
/// A document's term-presence set is exactly the support of its vector, so
/// presence is never stored separately.
#[derive(Clone, Debug)]
pub struct Corpus {
    dimension: u32,
    documents: Vec<FeatureVector>,
}

impl Corpus {
    pub fn new(dimension: u32, documents: Vec<FeatureVector>) -> Result<Self, Error> {
        if documents.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        for doc in &documents {
            if doc.dimension() != dimension {
                return Err(Error::DimensionMismatch {
                    left: doc.dimension(),
                    right: dimension,
                });
            }
        }
        Ok(Self {
            dimension,
            documents,
        })
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// Number of documents `n`.
    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one document
    }

    pub fn documents(&self) -> &[FeatureVector] {
        &self.documents
    }

    pub fn document(&self, index: usize) -> &FeatureVector {
        &self.documents[index]
    }
}

/// Per-term IDF weights `ξ_i = ln((n + 1) / (n_i + 1))`.
///
/// `n_i` counts the documents whose support contains term `i`. A term present
/// in every document weighs zero; a term present in none weighs `ln(n + 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdfVector {
    weights: Vec<f64>,
}

impl IdfVector {
    /// Wrap explicit weights (tests and oracles).
    pub fn from_weights(weights: Vec<f64>) -> Self {
        Self { weights }
    }

    pub fn dimension(&self) -> u32 {
        self.weights.len() as u32
    }

    /// Weight of the term at `rank` (1-based).
    pub fn weight(&self, rank: u32) -> f64 {
        self.weights[rank as usize - 1]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Compute IDF weights from document presence counts, natural log.
pub fn idf(corpus: &Corpus) -> IdfVector {
    let n = corpus.len() as f64;
    let mut doc_counts = vec![0u32; corpus.dimension() as usize];
    for doc in corpus.documents() {
        for &rank in doc.indices() {
            doc_counts[rank as usize - 1] += 1;
        }
    }
    let weights = doc_counts
        .iter()
        .map(|&ni| ((n + 1.0) / (f64::from(ni) + 1.0)).ln())
        .collect();
    IdfVector { weights }
}

/// Weighted squared-L2 distance `Σ ξ_i² (q_i − d_i)²`.
///
/// The sum runs over the union of the two supports; coordinates where both
/// vectors vanish contribute nothing regardless of `ξ_i`.
pub fn similarity(query: &FeatureVector, doc: &FeatureVector, xi: &IdfVector) -> f64 {
    debug_assert_eq!(query.dimension(), doc.dimension());
    merged(query, doc)
        .map(|(rank, q, d)| {
            let w = xi.weight(rank);
            if w == 0.0 {
                0.0
            } else {
                let diff = q - d;
                w * w * diff * diff
            }
        })
        .sum()
}

/// Scores of one query against every document, with the argmin decision.
#[derive(Clone, Debug, PartialEq)]
pub struct SimilarityReport {
    scores: Vec<f64>,
    winner: usize,
    tie: bool,
}

impl SimilarityReport {
    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    /// Index of the chosen document (0-based position in the corpus); the
    /// smallest index attaining the minimum score.
    pub fn winner(&self) -> usize {
        self.winner
    }

    /// Whether the minimum score is attained more than once (exact equality).
    pub fn tie(&self) -> bool {
        self.tie
    }
}

/// Score the query against every document and pick the argmin.
///
/// Ties break toward the lowest document index and are flagged so experiment
/// code can count them separately.
pub fn retrieve(query: &FeatureVector, corpus: &Corpus, xi: &IdfVector) -> SimilarityReport {
    let scores: Vec<f64> = corpus
        .documents()
        .iter()
        .map(|doc| similarity(query, doc, xi))
        .collect();
    let mut winner = 0;
    for (j, &score) in scores.iter().enumerate().skip(1) {
        if score < scores[winner] {
            winner = j;
        }
    }
    let tie = scores
        .iter()
        .enumerate()
        .any(|(j, &s)| j != winner && s == scores[winner]);
    SimilarityReport {
        scores,
        winner,
        tie,
    }
}
