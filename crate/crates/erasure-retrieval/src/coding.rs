//! Repetition encoding, the symbol erasure channel, and decoding.
//!
//! Each nonzero feature entry becomes an `(index, value)` symbol repeated in
//! proportion to its weight: for `M` symbols at nominal rate `R`,
//! `r_i = ⌈(M / (R · Σ v)) · v_i⌉`. Every copy is erased independently with
//! probability `ε`; a symbol survives iff at least one copy arrives, so the
//! per-symbol survival probability is `1 − ε^{r_i}`. The channel only erases;
//! surviving copies are identical, and decoding is the Hadamard product of the
//! sent vector with the survival indicator.

use rand::Rng;

use crate::features::FeatureVector;
use crate::numeric::ceil_with_slack;
use crate::Error;

/// One repetition-coded index-value symbol group.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Symbol {
    pub index: u32,
    pub value: f64,
    pub repetitions: u32,
}

/// A feature vector encoded as repetition-coded symbol groups.
#[derive(Clone, Debug)]
pub struct EncodedStream {
    dimension: u32,
    rate: f64,
    symbols: Vec<Symbol>,
}

impl EncodedStream {
    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// Nominal code rate requested at encode time.
    pub fn nominal_rate(&self) -> f64 {
        self.rate
    }

    /// Realized rate `M / Σ r_i`; at most the nominal rate because the
    /// ceiling only adds repetitions. Zero for an empty stream.
    pub fn realized_rate(&self) -> f64 {
        let total: u64 = self.symbols.iter().map(|s| u64::from(s.repetitions)).sum();
        if total == 0 {
            0.0
        } else {
            self.symbols.len() as f64 / total as f64
        }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.symbols.iter().map(|s| s.index)
    }
}

/// Encode the nonzero entries of `fv` at nominal rate `rate ∈ (0, 1]`.
///
/// An empty vector encodes to an empty stream; that is a documented state,
/// not an error.
pub fn encode(fv: &FeatureVector, rate: f64) -> Result<EncodedStream, Error> {
    if !rate.is_finite() || rate <= 0.0 || rate > 1.0 {
        return Err(Error::InvalidRate(rate));
    }
    if fv.is_empty() {
        return Ok(EncodedStream {
            dimension: fv.dimension(),
            rate,
            symbols: Vec::new(),
        });
    }
    let groups = fv.len() as f64;
    let total_weight = fv.sum();
    let scale = groups / (rate * total_weight);
    let symbols = fv
        .iter()
        .map(|(index, value)| Symbol {
            index,
            value,
            repetitions: (ceil_with_slack(scale * value) as u32).max(1),
        })
        .collect();
    Ok(EncodedStream {
        dimension: fv.dimension(),
        rate,
        symbols,
    })
}

/// Survival outcome of one transmission: how many copies of each encoded
/// symbol arrived. A symbol survives when at least one copy was received.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErasurePattern {
    indices: Vec<u32>,
    copies_received: Vec<u32>,
}

impl ErasurePattern {
    /// Pattern from explicit per-symbol received-copy counts.
    pub fn from_copies(indices: Vec<u32>, copies_received: Vec<u32>) -> Self {
        assert_eq!(indices.len(), copies_received.len());
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Self {
            indices,
            copies_received,
        }
    }

    /// Pattern in which every listed symbol survived with one copy.
    pub fn all_received(indices: Vec<u32>) -> Self {
        let copies = vec![1; indices.len()];
        Self::from_copies(indices, copies)
    }

    /// Pattern in which every listed symbol was fully erased.
    pub fn all_erased(indices: Vec<u32>) -> Self {
        let copies = vec![0; indices.len()];
        Self::from_copies(indices, copies)
    }

    /// Pattern over `domain` in which exactly the ranks satisfying
    /// `survives` are received.
    pub fn from_survivors(domain: Vec<u32>, mut survives: impl FnMut(u32) -> bool) -> Self {
        let copies = domain.iter().map(|&i| u32::from(survives(i))).collect();
        Self::from_copies(domain, copies)
    }

    /// Encoded indices the pattern is defined over, in rank order.
    pub fn domain(&self) -> &[u32] {
        &self.indices
    }

    /// Whether the symbol at `rank` survived. Indices outside the domain were
    /// never transmitted; the channel leaves them untouched.
    pub fn survived(&self, rank: u32) -> Option<bool> {
        self.indices
            .binary_search(&rank)
            .ok()
            .map(|i| self.copies_received[i] > 0)
    }

    pub fn survivors(&self) -> impl Iterator<Item = u32> + '_ {
        self.indices
            .iter()
            .zip(&self.copies_received)
            .filter(|&(_, &c)| c > 0)
            .map(|(&i, _)| i)
    }

    pub fn survivor_count(&self) -> usize {
        self.copies_received.iter().filter(|&&c| c > 0).count()
    }

    pub fn erased_count(&self) -> usize {
        self.indices.len() - self.survivor_count()
    }

    /// Copies received per symbol, aligned with [`domain`](Self::domain).
    pub fn copies_received(&self) -> &[u32] {
        &self.copies_received
    }
}

/// Send a stream through the erasure channel.
///
/// Every copy of every symbol is drawn as an independent Bernoulli(`epsilon`)
/// erasure, so per-copy statistics are observable, not just the aggregate
/// survival events.
pub fn transmit<R: Rng + ?Sized>(
    stream: &EncodedStream,
    epsilon: f64,
    rng: &mut R,
) -> Result<ErasurePattern, Error> {
    if !epsilon.is_finite() || !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::InvalidErasureProbability(epsilon));
    }
    let mut indices = Vec::with_capacity(stream.len());
    let mut copies = Vec::with_capacity(stream.len());
    for symbol in stream.symbols() {
        let received = (0..symbol.repetitions)
            .filter(|_| rng.random::<f64>() >= epsilon)
            .count() as u32;
        indices.push(symbol.index);
        copies.push(received);
    }
    Ok(ErasurePattern {
        indices,
        copies_received: copies,
    })
}

/// Reconstruct the feature vector from the surviving symbols: the Hadamard
/// product of the sent vector with the survival indicator. Fully erased
/// symbols are simply absent.
pub fn decode(stream: &EncodedStream, pattern: &ErasurePattern) -> FeatureVector {
    assert_eq!(
        pattern.domain(),
        stream.symbols().iter().map(|s| s.index).collect::<Vec<_>>(),
        "pattern domain must match the encoded indices"
    );
    let entries = stream
        .symbols()
        .iter()
        .zip(pattern.copies_received())
        .filter(|&(_, &copies)| copies > 0)
        .map(|(s, _)| (s.index, s.value));
    FeatureVector::new(stream.dimension(), entries)
        .expect("decoded entries are a subset of valid encoded entries")
}

/// Probability of observing `pattern` when `stream` crosses a channel with
/// erasure probability `epsilon`:
/// `Π_{survived} (1 − ε^{r_i}) · Π_{erased} ε^{r_i}`.
pub fn pattern_probability(stream: &EncodedStream, pattern: &ErasurePattern, epsilon: f64) -> f64 {
    debug_assert_eq!(pattern.domain().len(), stream.len());
    stream
        .symbols()
        .iter()
        .zip(pattern.copies_received())
        .map(|(symbol, &copies)| {
            let erased_all = epsilon.powi(symbol.repetitions as i32);
            if copies > 0 {
                1.0 - erased_all
            } else {
                erased_all
            }
        })
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::FeatureVector;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fv(dimension: u32, entries: &[(u32, f64)]) -> FeatureVector {
        FeatureVector::new(dimension, entries.iter().copied()).unwrap()
    }

    #[test]
    fn encode_hand_values() {
        let v = fv(5, &[(2, 0.4), (4, 0.6)]);
        let s = encode(&v, 0.5).unwrap();
        let reps: Vec<u32> = s.symbols().iter().map(|s| s.repetitions).collect();
        assert_eq!(reps, vec![2, 3]); // ceil(1.6), ceil(2.4)

        let s = encode(&v, 1.0).unwrap();
        let reps: Vec<u32> = s.symbols().iter().map(|s| s.repetitions).collect();
        assert_eq!(reps, vec![1, 2]); // ceil(0.8), ceil(1.2)
        assert!(s.realized_rate() <= 1.0);
    }

    #[test]
    fn equal_weights_get_uniform_repetitions() {
        // M entries of equal weight v = 1/l reduce the allocation to ⌈1/R⌉.
        for rate in [1.0f64, 0.5, 1.0 / 3.0] {
            let expected = (1.0 / rate).round() as u32;
            for m in 1..=50u32 {
                let v = fv(60, &(1..=m).map(|i| (i, 1.0 / 50.0)).collect::<Vec<_>>());
                let s = encode(&v, rate).unwrap();
                assert!(
                    s.symbols().iter().all(|s| s.repetitions == expected),
                    "m={m} rate={rate}"
                );
            }
        }
    }

    #[test]
    fn encode_rejects_bad_rates() {
        let v = fv(3, &[(1, 1.0)]);
        for rate in [0.0, -0.5, 1.5, f64::NAN, f64::INFINITY] {
            assert!(matches!(encode(&v, rate), Err(Error::InvalidRate(_))));
        }
    }

    #[test]
    fn empty_vector_encodes_to_empty_stream() {
        let s = encode(&FeatureVector::empty(10), 0.5).unwrap();
        assert!(s.is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let pattern = transmit(&s, 0.7, &mut rng).unwrap();
        assert!(decode(&s, &pattern).is_empty());
    }

    #[test]
    fn epsilon_zero_and_one_limits() {
        let v = fv(8, &[(1, 0.1), (3, 0.2), (7, 0.7)]);
        let s = encode(&v, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let all = transmit(&s, 0.0, &mut rng).unwrap();
        assert_eq!(all.survivor_count(), 3);
        assert_eq!(decode(&s, &all), v);
        let none = transmit(&s, 1.0, &mut rng).unwrap();
        assert_eq!(none.survivor_count(), 0);
        assert!(decode(&s, &none).is_empty());
    }

    #[test]
    fn transmit_rejects_bad_epsilon() {
        let s = encode(&fv(2, &[(1, 1.0)]), 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for eps in [-0.1, 1.1, f64::NAN] {
            assert!(matches!(
                transmit(&s, eps, &mut rng),
                Err(Error::InvalidErasureProbability(_))
            ));
        }
    }

    #[test]
    fn survival_rate_matches_one_minus_eps_to_the_r() {
        let trials = 100_000u32;
        for (r, eps) in [(1u32, 0.3), (2, 0.5), (3, 0.7)] {
            let v = fv(2, &[(1, 1.0)]);
            // Force the repetition count through the rate: r copies at v=1.
            let stream = EncodedStream {
                dimension: 2,
                rate: 1.0,
                symbols: vec![Symbol {
                    index: 1,
                    value: 1.0,
                    repetitions: r,
                }],
            };
            assert_eq!(stream.dimension(), v.dimension());
            let mut rng = ChaCha8Rng::seed_from_u64(u64::from(r) * 31 + 7);
            let mut survived = 0u32;
            for _ in 0..trials {
                let p = transmit(&stream, eps, &mut rng).unwrap();
                survived += p.survivor_count() as u32;
            }
            let expect = 1.0 - eps.powi(r as i32);
            let observed = survived as f64 / trials as f64;
            let bound = 4.0 * (expect * (1.0 - expect) / trials as f64).sqrt();
            assert!(
                (observed - expect).abs() <= bound,
                "r={r} eps={eps}: {observed} vs {expect}"
            );
        }
    }

    #[test]
    fn pattern_probability_hand_value() {
        let stream = EncodedStream {
            dimension: 2,
            rate: 1.0,
            symbols: vec![
                Symbol {
                    index: 1,
                    value: 0.5,
                    repetitions: 2,
                },
                Symbol {
                    index: 2,
                    value: 0.5,
                    repetitions: 3,
                },
            ],
        };
        let pattern = ErasurePattern::from_copies(vec![1, 2], vec![1, 0]);
        // (1 - 0.5^2) * 0.5^3 = 0.75 * 0.125
        assert!((pattern_probability(&stream, &pattern, 0.5) - 0.09375).abs() < 1e-15);

        let all = ErasurePattern::all_received(vec![1, 2]);
        assert_eq!(pattern_probability(&stream, &all, 0.0), 1.0);
    }

    #[test]
    fn pattern_probabilities_sum_to_one() {
        let v = fv(6, &[(1, 0.1), (2, 0.2), (4, 0.3), (6, 0.4)]);
        let stream = encode(&v, 0.5).unwrap();
        for eps in [0.2, 0.5, 0.9] {
            let mut total = crate::numeric::CompensatedSum::new();
            for bits in 0u32..16 {
                let pattern = ErasurePattern::from_copies(
                    stream.indices().collect(),
                    (0..4).map(|k| (bits >> k) & 1).collect(),
                );
                total.add(pattern_probability(&stream, &pattern, eps));
            }
            assert!((total.value() - 1.0).abs() < 1e-12, "eps={eps}");
        }
    }

    #[test]
    fn realized_rate_brackets() {
        // Ceiling only adds repetitions, so the realized rate never exceeds
        // the nominal one; with equal weights and integer 1/R it matches.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let mut entries: Vec<(u32, f64)> = Vec::new();
            for i in 1..=20u32 {
                if rng.random::<f64>() < 0.5 {
                    entries.push((i, rng.random::<f64>() + 1e-3));
                }
            }
            if entries.is_empty() {
                continue;
            }
            for rate in [1.0, 0.5, 0.25] {
                let s = encode(&fv(20, &entries), rate).unwrap();
                assert!(s.realized_rate() <= rate + 1e-12);
            }
        }
        let equal = fv(20, &(1..=8).map(|i| (i, 0.125)).collect::<Vec<_>>());
        for rate in [1.0, 0.5, 0.25] {
            let s = encode(&equal, rate).unwrap();
            assert!((s.realized_rate() - rate).abs() < 1e-12);
            assert!(s.realized_rate() >= rate / 2.0);
        }
    }

    proptest! {
        #[test]
        fn roundtrip_without_erasures(
            entries in proptest::collection::btree_map(1u32..=50, 1e-6f64..1.0, 1..20),
            rate_ix in 0usize..3,
        ) {
            let rate = [1.0, 0.5, 0.125][rate_ix];
            let v = FeatureVector::new(50, entries).unwrap();
            let stream = encode(&v, rate).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let pattern = transmit(&stream, 0.0, &mut rng).unwrap();
            prop_assert_eq!(decode(&stream, &pattern), v);
        }

        #[test]
        fn decode_support_is_a_subset(
            entries in proptest::collection::btree_map(1u32..=50, 1e-6f64..1.0, 1..20),
            eps in 0.0f64..=1.0,
            seed in 0u64..1000,
        ) {
            let v = FeatureVector::new(50, entries).unwrap();
            let stream = encode(&v, 0.5).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pattern = transmit(&stream, eps, &mut rng).unwrap();
            let decoded = decode(&stream, &pattern);
            for (rank, value) in decoded.iter() {
                prop_assert_eq!(value, v.get(rank));
            }
            prop_assert!(decoded.len() <= v.len());
        }
    }
}
