//! Zipf vocabularies and multinomial term-count sampling.
//!
//! A vocabulary is a ranked list of `N` terms whose selection probabilities
//! decay as `p_i ∝ 1/i^α`. Queries and synthetic documents are multisets of
//! independent draws from that distribution, so only their count vectors
//! matter downstream; term order is discarded at the source.

use std::sync::Arc;

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::numeric::compensated_sum;
use crate::Error;

/// Ranked vocabulary with Zipf selection probabilities.
///
/// Rank 1 is the most frequent term. Probabilities are normalized by direct
/// summation of `Σ 1/j^α`; no zeta-function approximation is involved.
#[derive(Clone, Debug)]
pub struct VocabularyModel {
    alpha: f64,
    probs: Arc<[f64]>,
    // tail[i] = Σ_{j >= i} probs[j]; drives the conditional-binomial sampler.
    tail: Arc<[f64]>,
}

/// Build a Zipf vocabulary of `size` terms with exponent `alpha`.
///
/// `alpha = 0` yields the uniform distribution.
pub fn build_vocabulary(size: u32, alpha: f64) -> Result<VocabularyModel, Error> {
    if size == 0 {
        return Err(Error::EmptyVocabulary);
    }
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::InvalidExponent(alpha));
    }
    let n = size as usize;
    // Sum the smallest weights first so the normalizer is accurate at large N.
    let norm = compensated_sum((1..=n).rev().map(|j| (j as f64).powf(-alpha)));
    let probs: Vec<f64> = (1..=n).map(|j| (j as f64).powf(-alpha) / norm).collect();
    let mut tail = vec![0.0; n];
    let mut acc = 0.0;
    for i in (0..n).rev() {
        acc += probs[i];
        tail[i] = acc;
    }
    Ok(VocabularyModel {
        alpha,
        probs: probs.into(),
        tail: tail.into(),
    })
}

impl VocabularyModel {
    pub fn size(&self) -> u32 {
        self.probs.len() as u32
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Selection probability of the term at `rank` (1-based).
    pub fn prob(&self, rank: u32) -> f64 {
        self.probs[rank as usize - 1]
    }

    /// All probabilities in rank order.
    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    /// Shared handle to the probabilities, for models that reference them.
    pub(crate) fn shared_probabilities(&self) -> Arc<[f64]> {
        Arc::clone(&self.probs)
    }
}

/// Sparse nonnegative term counts summing to a fixed total.
///
/// Entries are `(rank, count)` pairs sorted by rank; absent ranks have count
/// zero. Storage is proportional to the number of distinct terms drawn.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermCounts {
    dimension: u32,
    total: u32,
    entries: Vec<(u32, u32)>,
}

impl TermCounts {
    /// Assemble counts from `(rank, count)` pairs. Zero counts are dropped;
    /// the total is the sum of the remaining counts and must be positive.
    pub fn from_entries(
        dimension: u32,
        entries: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self, Error> {
        let mut entries: Vec<(u32, u32)> = entries.into_iter().filter(|&(_, c)| c > 0).collect();
        entries.sort_unstable_by_key(|&(rank, _)| rank);
        let mut total: u64 = 0;
        let mut prev = 0u32;
        for &(rank, count) in &entries {
            if rank == 0 || rank > dimension {
                return Err(Error::IndexOutOfRange {
                    index: rank,
                    dimension,
                });
            }
            if rank == prev {
                return Err(Error::DuplicateIndex(rank));
            }
            prev = rank;
            total += u64::from(count);
        }
        if total == 0 {
            return Err(Error::EmptySample);
        }
        Ok(Self {
            dimension,
            total: u32::try_from(total).expect("count total fits in u32"),
            entries,
        })
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// Total number of draws `l`.
    pub fn total(&self) -> u32 {
        self.total
    }

    /// Nonzero `(rank, count)` pairs in rank order.
    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    /// Count at `rank`; zero when the rank was never drawn.
    pub fn count(&self, rank: u32) -> u32 {
        self.entries
            .binary_search_by_key(&rank, |&(r, _)| r)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }
}

/// Sample the term counts of a query of `len` independent Zipf draws.
///
/// Uses the conditional-binomial decomposition of the multinomial: rank by
/// rank, the count is binomial in the remaining draws with the renormalized
/// tail probability. Work is O(N) and storage is O(distinct terms).
pub fn sample_term_counts<R: Rng + ?Sized>(
    vocab: &VocabularyModel,
    len: u32,
    rng: &mut R,
) -> Result<TermCounts, Error> {
    if len == 0 {
        return Err(Error::EmptySample);
    }
    let n = vocab.probs.len();
    let mut remaining = u64::from(len);
    let mut entries = Vec::new();
    for i in 0..n {
        if remaining == 0 {
            break;
        }
        // Last rank, or a tail so small the conditional probability is 1.
        let count = if i + 1 == n || vocab.tail[i] <= vocab.probs[i] {
            remaining
        } else {
            let p = (vocab.probs[i] / vocab.tail[i]).clamp(0.0, 1.0);
            Binomial::new(remaining, p)
                .expect("conditional probability in [0, 1]")
                .sample(rng)
        };
        if count > 0 {
            entries.push((i as u32 + 1, count as u32));
            remaining -= count;
        }
    }
    debug_assert_eq!(remaining, 0);
    Ok(TermCounts {
        dimension: vocab.size(),
        total: len,
        entries,
    })
}

/// Sample the term counts of a synthetic document of `len` draws.
///
/// Identical contract to [`sample_term_counts`]; documents just tend to be
/// much longer than queries.
pub fn sample_document_counts<R: Rng + ?Sized>(
    vocab: &VocabularyModel,
    len: u32,
    rng: &mut R,
) -> Result<TermCounts, Error> {
    sample_term_counts(vocab, len, rng)
}

/// Implicit mean and covariance of a multinomial count vector.
///
/// The covariance is never materialized: entries are computed on demand from
/// `(len, p)`, so no storage quadratic in the vocabulary size exists.
#[derive(Clone, Debug)]
pub struct MultinomialMoments {
    len: u32,
    probs: Arc<[f64]>,
}

/// Moment handle for `Multinomial(len, p)` counts over `vocab`.
pub fn moments(vocab: &VocabularyModel, len: u32) -> Result<MultinomialMoments, Error> {
    if len == 0 {
        return Err(Error::EmptySample);
    }
    Ok(MultinomialMoments {
        len,
        probs: vocab.shared_probabilities(),
    })
}

impl MultinomialMoments {
    /// Number of draws `l`.
    pub fn draws(&self) -> u32 {
        self.len
    }

    pub fn dimension(&self) -> u32 {
        self.probs.len() as u32
    }

    /// Mean count at `rank`: `l * p_i`.
    pub fn mean_at(&self, rank: u32) -> f64 {
        self.len as f64 * self.probs[rank as usize - 1]
    }

    /// Covariance between the counts at two ranks:
    /// `l * p_i * (1 - p_i)` on the diagonal, `-l * p_i * p_j` off it.
    pub fn covariance_at(&self, rank_i: u32, rank_j: u32) -> f64 {
        let l = self.len as f64;
        let pi = self.probs[rank_i as usize - 1];
        let pj = self.probs[rank_j as usize - 1];
        if rank_i == rank_j {
            l * pi * (1.0 - pi)
        } else {
            -l * pi * pj
        }
    }
}
