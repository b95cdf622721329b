//! Deterministic seed derivation.
//!
//! Every random decision in an experiment is keyed off a single master seed
//! through the SplitMix64 finalizer: child streams are derived as
//! `mix64(parent + (index + 1) * GAMMA)`. The derivation is pure arithmetic,
//! so parallel and serial runs of the same configuration consume identical
//! seeds regardless of scheduling.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer: a bijective 64-bit avalanche mix.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive the `index`-th child seed of `parent`.
pub fn child(parent: u64, index: u64) -> u64 {
    mix64(parent.wrapping_add(GAMMA.wrapping_mul(index.wrapping_add(1))))
}

/// Fixed labels for the independent random streams of an experiment.
pub mod stream {
    /// Corpus document sampling.
    pub const CORPUS: u64 = 0;
    /// Monte Carlo trials.
    pub const TRIALS: u64 = 1;
    /// Pattern sampling inside the analytic error estimate.
    pub const ANALYSIS: u64 = 2;
}

/// Label for a grid point, combining the rate and erasure indices.
pub fn point_label(rate_index: usize, epsilon_index: usize) -> u64 {
    ((rate_index as u64) << 32) | epsilon_index as u64
}
