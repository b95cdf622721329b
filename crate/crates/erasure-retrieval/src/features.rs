//! Term-frequency features, stop-word masking, and the masked Gaussian model.
//!
//! Feature vectors are sparse maps from vocabulary rank to a positive weight;
//! zeros are never stored. The Gaussian model of the masked query vector is
//! kept implicit (at realistic vocabulary sizes its covariance would hold
//! billions of entries) and is exposed only through the linear and bilinear
//! forms the error analysis consumes, each O(support) to evaluate.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::vocab::{TermCounts, VocabularyModel};
use crate::Error;

/// Sparse nonnegative term-weight vector over a vocabulary of fixed size.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureVector {
    dimension: u32,
    indices: Vec<u32>,
    values: Vec<f64>,
}

impl FeatureVector {
    /// Build a vector from `(rank, weight)` entries. Weights must be strictly
    /// positive and finite; ranks must be unique and within `1..=dimension`.
    pub fn new(
        dimension: u32,
        entries: impl IntoIterator<Item = (u32, f64)>,
    ) -> Result<Self, Error> {
        let mut entries: Vec<(u32, f64)> = entries.into_iter().collect();
        entries.sort_unstable_by_key(|&(rank, _)| rank);
        let mut indices = Vec::with_capacity(entries.len());
        let mut values = Vec::with_capacity(entries.len());
        for (rank, weight) in entries {
            if rank == 0 || rank > dimension {
                return Err(Error::IndexOutOfRange {
                    index: rank,
                    dimension,
                });
            }
            if indices.last() == Some(&rank) {
                return Err(Error::DuplicateIndex(rank));
            }
            if !(weight.is_finite() && weight > 0.0) {
                return Err(Error::InvalidWeight {
                    index: rank,
                    value: weight,
                });
            }
            indices.push(rank);
            values.push(weight);
        }
        Ok(Self {
            dimension,
            indices,
            values,
        })
    }

    /// The all-zero vector.
    pub fn empty(dimension: u32) -> Self {
        Self {
            dimension,
            indices: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// Number of stored (nonzero) entries.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Weight at `rank`, zero when absent.
    pub fn get(&self, rank: u32) -> f64 {
        self.indices
            .binary_search(&rank)
            .map(|i| self.values[i])
            .unwrap_or(0.0)
    }

    /// Stored entries in rank order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.indices
            .iter()
            .copied()
            .zip(self.values.iter().copied())
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Sum of stored weights.
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Union-merge two sparse vectors: yields `(rank, left, right)` over the
/// combined support, with zero for the side that lacks the rank.
pub(crate) fn merged<'a>(
    left: &'a FeatureVector,
    right: &'a FeatureVector,
) -> impl Iterator<Item = (u32, f64, f64)> + 'a {
    let mut i = 0;
    let mut j = 0;
    std::iter::from_fn(move || {
        let li = left.indices.get(i).copied();
        let rj = right.indices.get(j).copied();
        match (li, rj) {
            (Some(l), Some(r)) if l == r => {
                let out = (l, left.values[i], right.values[j]);
                i += 1;
                j += 1;
                Some(out)
            }
            (Some(l), Some(r)) if l < r => {
                let out = (l, left.values[i], 0.0);
                i += 1;
                Some(out)
            }
            (Some(_), Some(r)) => {
                let out = (r, 0.0, right.values[j]);
                j += 1;
                Some(out)
            }
            (Some(l), None) => {
                let out = (l, left.values[i], 0.0);
                i += 1;
                Some(out)
            }
            (None, Some(r)) => {
                let out = (r, 0.0, right.values[j]);
                j += 1;
                Some(out)
            }
            (None, None) => None,
        }
    })
}

/// The set of vocabulary ranks zeroed from query vectors before encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StopWordSet {
    dimension: u32,
    indices: BTreeSet<u32>,
}

impl StopWordSet {
    pub fn new(dimension: u32, indices: impl IntoIterator<Item = u32>) -> Result<Self, Error> {
        let indices: BTreeSet<u32> = indices.into_iter().collect();
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > dimension) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                dimension,
            });
        }
        Ok(Self { dimension, indices })
    }

    pub fn empty(dimension: u32) -> Self {
        Self {
            dimension,
            indices: BTreeSet::new(),
        }
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// Number of stop words `l_s`.
    pub fn size(&self) -> u32 {
        self.indices.len() as u32
    }

    pub fn contains(&self, rank: u32) -> bool {
        self.indices.contains(&rank)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.indices.iter().copied()
    }
}

/// Term-frequency vector of `counts`: entry `i` is `count_i / l`.
pub fn term_frequency(counts: &TermCounts) -> FeatureVector {
    let l = counts.total() as f64;
    let (indices, values) = counts
        .entries()
        .iter()
        .map(|&(rank, count)| (rank, count as f64 / l))
        .unzip();
    FeatureVector {
        dimension: counts.dimension(),
        indices,
        values,
    }
}

/// Remove the stop-word coordinates from a feature vector. Idempotent.
pub fn apply_stop_mask(fv: &FeatureVector, stop: &StopWordSet) -> FeatureVector {
    assert_eq!(
        fv.dimension(),
        stop.dimension(),
        "feature vector and stop set must share a vocabulary"
    );
    if stop.indices.is_empty() {
        return fv.clone();
    }
    let (indices, values) = fv.iter().filter(|&(rank, _)| !stop.contains(rank)).unzip();
    FeatureVector {
        dimension: fv.dimension,
        indices,
        values,
    }
}

/// The `top_count` most frequent terms, i.e. ranks `1..=top_count`.
pub fn top_rank_stop_set(vocab: &VocabularyModel, top_count: u32) -> Result<StopWordSet, Error> {
    if top_count > vocab.size() {
        return Err(Error::StopSetTooLarge {
            requested: top_count,
            dimension: vocab.size(),
        });
    }
    Ok(StopWordSet {
        dimension: vocab.size(),
        indices: (1..=top_count).collect(),
    })
}

/// Implicit Gaussian model of the masked, normalized query vector.
///
/// For query length `l` and term probabilities `p`, the unmasked vector has
/// mean `p` and covariance `(1/l)(diag(p) - p pᵀ)`; masking zeroes the rows
/// and columns of the stop-word ranks. Both moments stay implicit and are
/// queried through [`mean_dot`](Self::mean_dot) and
/// [`bilinear`](Self::bilinear).
#[derive(Clone, Debug)]
pub struct MaskedGaussianModel {
    query_len: u32,
    probs: Arc<[f64]>,
    mask: StopWordSet,
}

/// Gaussian model for queries of length `query_len` drawn from `vocab`,
/// masked by `stop`.
pub fn masked_model(
    vocab: &VocabularyModel,
    query_len: u32,
    stop: &StopWordSet,
) -> MaskedGaussianModel {
    assert_eq!(vocab.size(), stop.dimension());
    assert!(query_len >= 1, "query length must be positive");
    MaskedGaussianModel {
        query_len,
        probs: vocab.shared_probabilities(),
        mask: stop.clone(),
    }
}

impl MaskedGaussianModel {
    /// Model over explicit term probabilities, e.g. the empirical frequencies
    /// of an ingested corpus. The probabilities must be nonnegative, finite,
    /// and sum to 1.
    pub fn from_probabilities(
        probs: impl Into<Arc<[f64]>>,
        query_len: u32,
        stop: &StopWordSet,
    ) -> Result<Self, Error> {
        let probs = probs.into();
        if query_len == 0 {
            return Err(Error::EmptySample);
        }
        if probs.len() as u32 != stop.dimension() {
            return Err(Error::DimensionMismatch {
                left: probs.len() as u32,
                right: stop.dimension(),
            });
        }
        let sum: f64 = probs.iter().sum();
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidProbabilities(sum));
        }
        Ok(Self {
            query_len,
            probs,
            mask: stop.clone(),
        })
    }

    pub fn dimension(&self) -> u32 {
        self.probs.len() as u32
    }

    pub fn query_len(&self) -> u32 {
        self.query_len
    }

    pub fn mask(&self) -> &StopWordSet {
        &self.mask
    }

    pub fn is_masked(&self, rank: u32) -> bool {
        self.mask.contains(rank)
    }

    /// Mean of the masked vector at `rank`: `p_i` off the mask, 0 on it.
    pub fn mean_at(&self, rank: u32) -> f64 {
        if self.mask.contains(rank) {
            0.0
        } else {
            self.probs[rank as usize - 1]
        }
    }

    /// `Σ_{i ∉ mask} a_i p_i` for sparse coefficients sorted by rank.
    pub fn mean_dot(&self, coeffs: &[(u32, f64)]) -> f64 {
        coeffs
            .iter()
            .filter(|&&(rank, _)| !self.mask.contains(rank))
            .map(|&(rank, a)| a * self.probs[rank as usize - 1])
            .sum()
    }

    /// The covariance bilinear form
    /// `aᵀ Σ b = (1/l)(Σ_{i ∉ mask} a_i b_i p_i − (Σ a_i p_i)(Σ b_i p_i))`,
    /// evaluated in O(support) without materializing Σ.
    pub fn bilinear(&self, a: &[(u32, f64)], b: &[(u32, f64)]) -> f64 {
        let mut cross = 0.0;
        let mut i = 0;
        let mut j = 0;
        while i < a.len() && j < b.len() {
            let (ra, va) = a[i];
            let (rb, vb) = b[j];
            if ra == rb {
                if !self.mask.contains(ra) {
                    cross += va * vb * self.probs[ra as usize - 1];
                }
                i += 1;
                j += 1;
            } else if ra < rb {
                i += 1;
            } else {
                j += 1;
            }
        }
        (cross - self.mean_dot(a) * self.mean_dot(b)) / self.query_len as f64
    }
}
