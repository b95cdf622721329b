//! Closed-form Gaussian analysis of the two-document retrieval error.
//!
//! For a two-document corpus the score difference `s = s₁ − s₂` is a linear
//! function of the query feature vector, so under the Gaussian model of the
//! masked query both the sent score `s` and the received score `ŝ` (given an
//! erasure pattern) are Gaussian, and jointly so. A retrieval error is a sign
//! disagreement between them; conditioned on a pattern its probability is
//!
//! ```text
//! Φ(δ) + Φ(δ̂) − 2 Φ₂(δ, δ̂; ρ)    δ = −μ_s/σ_s,  δ̂ = −μ_ŝ/σ_ŝ
//! ```
//!
//! and the overall error probability averages this over the erasure-pattern
//! distribution. Coordinates outside the support of the linear coefficients
//! cannot change any moment, so the average runs over patterns restricted to
//! that support: exhaustively when the support is small, by i.i.d. pattern
//! sampling with a reported standard error otherwise.

pub mod normal;

use std::fmt;

use rand::Rng;

use crate::coding::ErasurePattern;
use crate::features::{merged, FeatureVector, MaskedGaussianModel};
use crate::numeric::CompensatedSum;
use crate::retrieval::IdfVector;
use crate::Error;

pub use normal::{bivariate_normal_cdf, std_normal_cdf};

/// Supports of this size or smaller are averaged by exact enumeration.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 20;

// Variances this small relative to the absolute-term sum are cancellation
// noise; treat them as exactly degenerate.
const VARIANCE_FLOOR: f64 = 1e-13;

// Tolerance for correlation rounding just outside [-1, 1]; larger violations
// indicate a bug, not rounding.
const CORRELATION_SLACK: f64 = 1e-9;

/// The score difference `s₁ − s₂` as an affine map of the query vector:
/// `s = Σ a_i v_i + c` with `a_i = 2 ξ_i² (v_{d₂,i} − v_{d₁,i})` and
/// `c = Σ ξ_i² (v_{d₁,i}² − v_{d₂,i}²)`.
#[derive(Clone, Debug)]
pub struct ScoreExpansion {
    dimension: u32,
    coefficients: Vec<(u32, f64)>,
    constant: f64,
}

/// Expand the score difference between two documents under IDF weights.
pub fn expand_scores(doc1: &FeatureVector, doc2: &FeatureVector, xi: &IdfVector) -> ScoreExpansion {
    debug_assert_eq!(doc1.dimension(), doc2.dimension());
    let mut coefficients = Vec::new();
    let mut constant = CompensatedSum::new();
    for (rank, v1, v2) in merged(doc1, doc2) {
        let w = xi.weight(rank);
        if w == 0.0 {
            continue;
        }
        let w2 = w * w;
        let a = 2.0 * w2 * (v2 - v1);
        if a != 0.0 {
            coefficients.push((rank, a));
        }
        constant.add(w2 * (v1 * v1 - v2 * v2));
    }
    ScoreExpansion {
        dimension: doc1.dimension(),
        coefficients,
        constant: constant.value(),
    }
}

impl ScoreExpansion {
    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// Nonzero linear coefficients `(rank, a_i)` in rank order.
    pub fn coefficients(&self) -> &[(u32, f64)] {
        &self.coefficients
    }

    /// The aggregated constant term `c`.
    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// Ranks with nonzero coefficients.
    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.coefficients.iter().map(|&(rank, _)| rank)
    }

    /// Evaluate `s` at a concrete query vector.
    pub fn evaluate(&self, query: &FeatureVector) -> f64 {
        let dot: f64 = self
            .coefficients
            .iter()
            .map(|&(rank, a)| a * query.get(rank))
            .sum();
        dot + self.constant
    }
}

/// Zero the expansion coefficients on the erased coordinates of `pattern`
/// (`D_e a`). Coordinates outside the pattern's domain were never
/// transmitted and stay as they are.
fn erase_coefficients(coeffs: &[(u32, f64)], pattern: &ErasurePattern) -> Vec<(u32, f64)> {
    coeffs
        .iter()
        .filter(|&&(rank, _)| pattern.survived(rank) != Some(false))
        .copied()
        .collect()
}

/// Mean and standard deviation of the sent score `s`.
pub fn unconditional_moments(exp: &ScoreExpansion, model: &MaskedGaussianModel) -> (f64, f64) {
    let mean = model.mean_dot(&exp.coefficients) + exp.constant;
    let var = model.bilinear(&exp.coefficients, &exp.coefficients);
    (mean, var.max(0.0).sqrt())
}

/// Mean and standard deviation of the received score `ŝ` given a pattern.
pub fn conditional_moments(
    exp: &ScoreExpansion,
    model: &MaskedGaussianModel,
    pattern: &ErasurePattern,
) -> (f64, f64) {
    let erased = erase_coefficients(&exp.coefficients, pattern);
    let mean = model.mean_dot(&erased) + exp.constant;
    let var = model.bilinear(&erased, &erased);
    (mean, var.max(0.0).sqrt())
}

/// Correlation between `s` and `ŝ | e`:
/// `ρ = aᵀ D_e Σ a / (σ_s σ_ŝ)`, clamped into [−1, 1] after a rounding
/// check. Errors with [`Error::DegenerateVariance`] when either score is
/// deterministic; the caller handles those through the degenerate branches
/// of the error formula.
pub fn correlation(
    exp: &ScoreExpansion,
    model: &MaskedGaussianModel,
    pattern: &ErasurePattern,
) -> Result<f64, Error> {
    let (_, sd_sent) = unconditional_moments(exp, model);
    let (_, sd_received) = conditional_moments(exp, model, pattern);
    if sd_sent == 0.0 || sd_received == 0.0 {
        return Err(Error::DegenerateVariance);
    }
    let erased = erase_coefficients(&exp.coefficients, pattern);
    let cov = model.bilinear(&erased, &exp.coefficients);
    clamp_correlation(cov / (sd_sent * sd_received))
}

fn clamp_correlation(rho: f64) -> Result<f64, Error> {
    if rho.abs() > 1.0 + CORRELATION_SLACK || rho.is_nan() {
        return Err(Error::CorrelationOutOfBounds(rho));
    }
    Ok(rho.clamp(-1.0, 1.0))
}

/// Joint-Gaussian description of the sent and received scores for one
/// erasure pattern.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianScorePair {
    pub sent_mean: f64,
    pub sent_sd: f64,
    pub received_mean: f64,
    pub received_sd: f64,
    /// Correlation of the two scores; 0 when either side is deterministic
    /// (the error formula never consults it then).
    pub correlation: f64,
}

impl GaussianScorePair {
    /// Assemble the pair for a concrete pattern.
    pub fn for_pattern(
        exp: &ScoreExpansion,
        model: &MaskedGaussianModel,
        pattern: &ErasurePattern,
    ) -> Result<Self, Error> {
        let (sent_mean, sent_sd) = unconditional_moments(exp, model);
        let (received_mean, received_sd) = conditional_moments(exp, model, pattern);
        let correlation = match correlation(exp, model, pattern) {
            Ok(rho) => rho,
            Err(Error::DegenerateVariance) => 0.0,
            Err(e) => return Err(e),
        };
        Ok(Self {
            sent_mean,
            sent_sd,
            received_mean,
            received_sd,
            correlation,
        })
    }
}

/// Sign-disagreement probability for one pattern, with a flag marking the
/// degenerate zero-variance branches.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PatternErrorProbability {
    pub probability: f64,
    pub degenerate: bool,
}

/// `P[sign(s) ≠ sign(ŝ)]` for a jointly Gaussian score pair.
///
/// With both variances positive this is `Φ(δ) + Φ(δ̂) − 2Φ₂(δ, δ̂; ρ)`.
/// When one score is deterministic the event degenerates to a single-sided
/// tail against that score's sign; a deterministic score of exactly zero is
/// assigned probability 1/2 by symmetry convention and flagged.
pub fn pattern_error_probability(
    pair: &GaussianScorePair,
) -> Result<PatternErrorProbability, Error> {
    let GaussianScorePair {
        sent_mean,
        sent_sd,
        received_mean,
        received_sd,
        correlation,
    } = *pair;
    let probability = match (sent_sd > 0.0, received_sd > 0.0) {
        (true, true) => {
            let delta = -sent_mean / sent_sd;
            let delta_hat = -received_mean / received_sd;
            let joint = bivariate_normal_cdf(delta, delta_hat, correlation)?;
            let p = std_normal_cdf(delta) + std_normal_cdf(delta_hat) - 2.0 * joint;
            return Ok(PatternErrorProbability {
                probability: p.clamp(0.0, 1.0),
                degenerate: false,
            });
        }
        (true, false) => one_sided(sent_mean, sent_sd, received_mean),
        (false, true) => one_sided(received_mean, received_sd, sent_mean),
        (false, false) => {
            if sent_mean == 0.0 || received_mean == 0.0 {
                0.5
            } else if sent_mean.signum() == received_mean.signum() {
                0.0
            } else {
                1.0
            }
        }
    };
    Ok(PatternErrorProbability {
        probability,
        degenerate: true,
    })
}

// P[sign of N(mean, sd)] disagreeing with the sign of a constant score.
fn one_sided(mean: f64, sd: f64, constant: f64) -> f64 {
    let tail = std_normal_cdf(-mean / sd);
    if constant > 0.0 {
        tail
    } else if constant < 0.0 {
        1.0 - tail
    } else {
        0.5
    }
}

/// How the pattern average was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AveragingMode {
    /// Every pattern over the coefficient support was enumerated; the result
    /// is exact up to rounding and the standard error is zero.
    Exhaustive { patterns: u64 },
    /// Patterns were sampled i.i.d.; the standard error is the sample
    /// standard error of the mean.
    Sampled { budget: u64 },
}

impl fmt::Display for AveragingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AveragingMode::Exhaustive { patterns } => write!(f, "exhaustive({patterns} patterns)"),
            AveragingMode::Sampled { budget } => write!(f, "sampled({budget} patterns)"),
        }
    }
}

/// Pattern-averaged analytic error probability.
#[derive(Clone, Copy, Debug)]
pub struct ErrorEstimate {
    pub probability: f64,
    pub stderr: f64,
    pub mode: AveragingMode,
    /// Number of evaluated patterns that hit a degenerate-variance branch.
    pub degenerate_patterns: u64,
}

/// Analytic retrieval-error probability for a two-document corpus, averaged
/// over erasure patterns with a fixed per-symbol repetition count.
///
/// Patterns are restricted to the coefficient support of the score expansion
/// (erasures elsewhere cannot change any moment). Supports of at most
/// [`DEFAULT_EXHAUSTIVE_LIMIT`] indices are enumerated exhaustively; larger
/// ones are sampled with `pattern_budget` i.i.d. patterns drawn from `rng`.
#[allow(clippy::too_many_arguments)]
pub fn analytic_error_probability<R: Rng + ?Sized>(
    doc1: &FeatureVector,
    doc2: &FeatureVector,
    xi: &IdfVector,
    model: &MaskedGaussianModel,
    epsilon: f64,
    repetitions: u32,
    pattern_budget: u64,
    rng: &mut R,
) -> Result<ErrorEstimate, Error> {
    analytic_error_probability_with_limit(
        doc1,
        doc2,
        xi,
        model,
        epsilon,
        repetitions,
        pattern_budget,
        DEFAULT_EXHAUSTIVE_LIMIT,
        rng,
    )
}

/// [`analytic_error_probability`] with an explicit exhaustive-enumeration
/// limit; a limit of zero forces pattern sampling.
#[allow(clippy::too_many_arguments)]
pub fn analytic_error_probability_with_limit<R: Rng + ?Sized>(
    doc1: &FeatureVector,
    doc2: &FeatureVector,
    xi: &IdfVector,
    model: &MaskedGaussianModel,
    epsilon: f64,
    repetitions: u32,
    pattern_budget: u64,
    exhaustive_limit: usize,
    rng: &mut R,
) -> Result<ErrorEstimate, Error> {
    if !epsilon.is_finite() || !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::InvalidErasureProbability(epsilon));
    }
    if repetitions == 0 {
        return Err(Error::EmptyRepetitions);
    }
    if pattern_budget == 0 {
        return Err(Error::EmptyPatternBudget);
    }
    let exp = expand_scores(doc1, doc2, xi);
    let support = SupportMoments::build(&exp, model);
    let survival = 1.0 - epsilon.powi(repetitions as i32);

    // A survival probability of exactly 0 or 1 leaves a single pattern.
    if survival == 1.0 || survival == 0.0 {
        let survivors = if survival == 1.0 {
            vec![true; support.len()]
        } else {
            vec![false; support.len()]
        };
        let value = support.pattern_error(&survivors)?;
        return Ok(ErrorEstimate {
            probability: value.probability,
            stderr: 0.0,
            mode: AveragingMode::Exhaustive { patterns: 1 },
            degenerate_patterns: u64::from(value.degenerate),
        });
    }

    if support.len() <= exhaustive_limit {
        support.exhaustive(survival)
    } else {
        support.sampled(survival, pattern_budget, rng)
    }
}

/// Precomputed per-index moment contributions over the unmasked coefficient
/// support: `w_i = a_i p_i` and `u_i = a_i² p_i`. Every conditional moment
/// is a partial sum of these.
struct SupportMoments {
    weights: Vec<f64>,
    squares: Vec<f64>,
    sum_w: f64,
    sum_u: f64,
    constant: f64,
    inv_len: f64,
}

impl SupportMoments {
    fn build(exp: &ScoreExpansion, model: &MaskedGaussianModel) -> Self {
        let mut weights = Vec::new();
        let mut squares = Vec::new();
        for &(rank, a) in exp.coefficients() {
            if model.is_masked(rank) {
                continue;
            }
            let p = model.mean_at(rank);
            if p == 0.0 {
                continue;
            }
            weights.push(a * p);
            squares.push(a * a * p);
        }
        let sum_w = weights.iter().sum();
        let sum_u = squares.iter().sum();
        Self {
            weights,
            squares,
            sum_w,
            sum_u,
            constant: exp.constant(),
            inv_len: 1.0 / model.query_len() as f64,
        }
    }

    fn len(&self) -> usize {
        self.weights.len()
    }

    fn variance(&self, sum_u: f64, sum_w: f64) -> f64 {
        let raw = sum_u - sum_w * sum_w;
        if raw <= VARIANCE_FLOOR * sum_u {
            0.0
        } else {
            raw * self.inv_len
        }
    }

    /// Error probability for one pattern given per-index survival flags.
    fn pattern_error(&self, survivors: &[bool]) -> Result<PatternErrorProbability, Error> {
        let mut w_surv = 0.0;
        let mut u_surv = 0.0;
        for (i, &alive) in survivors.iter().enumerate() {
            if alive {
                w_surv += self.weights[i];
                u_surv += self.squares[i];
            }
        }
        self.pattern_error_from_sums(w_surv, u_surv)
    }

    fn pattern_error_from_sums(
        &self,
        w_surv: f64,
        u_surv: f64,
    ) -> Result<PatternErrorProbability, Error> {
        let sent_mean = self.sum_w + self.constant;
        let sent_var = self.variance(self.sum_u, self.sum_w);
        let received_mean = w_surv + self.constant;
        let received_var = self.variance(u_surv, w_surv);
        let sent_sd = sent_var.sqrt();
        let received_sd = received_var.sqrt();
        let correlation = if sent_sd > 0.0 && received_sd > 0.0 {
            let cov = (u_surv - w_surv * self.sum_w) * self.inv_len;
            clamp_correlation(cov / (sent_sd * received_sd))?
        } else {
            0.0
        };
        pattern_error_probability(&GaussianScorePair {
            sent_mean,
            sent_sd,
            received_mean,
            received_sd,
            correlation,
        })
    }

    fn exhaustive(&self, survival: f64) -> Result<ErrorEstimate, Error> {
        let m = self.len();
        assert!(m < 64, "exhaustive enumeration limit must stay below 64");
        let erased = 1.0 - survival;
        // weight(pattern) = survival^k * erased^(m-k) for k survivors.
        let mut surv_pow = vec![1.0; m + 1];
        let mut eras_pow = vec![1.0; m + 1];
        for i in 1..=m {
            surv_pow[i] = surv_pow[i - 1] * survival;
            eras_pow[i] = eras_pow[i - 1] * erased;
        }
        let mut total = CompensatedSum::new();
        let mut weight_check = CompensatedSum::new();
        let mut degenerate = 0u64;
        for bits in 0u64..(1u64 << m) {
            let mut w_surv = 0.0;
            let mut u_surv = 0.0;
            let mut alive = 0usize;
            for i in 0..m {
                if bits >> i & 1 == 1 {
                    w_surv += self.weights[i];
                    u_surv += self.squares[i];
                    alive += 1;
                }
            }
            let weight = surv_pow[alive] * eras_pow[m - alive];
            let value = self.pattern_error_from_sums(w_surv, u_surv)?;
            degenerate += u64::from(value.degenerate);
            total.add(weight * value.probability);
            weight_check.add(weight);
        }
        debug_assert!((weight_check.value() - 1.0).abs() < 1e-12);
        Ok(ErrorEstimate {
            probability: total.value().clamp(0.0, 1.0),
            stderr: 0.0,
            mode: AveragingMode::Exhaustive {
                patterns: 1u64 << m,
            },
            degenerate_patterns: degenerate,
        })
    }

    fn sampled<R: Rng + ?Sized>(
        &self,
        survival: f64,
        budget: u64,
        rng: &mut R,
    ) -> Result<ErrorEstimate, Error> {
        // Welford running mean/variance of the per-pattern probabilities.
        let mut mean = 0.0;
        let mut m2 = 0.0;
        let mut degenerate = 0u64;
        for sample in 1..=budget {
            let mut w_surv = 0.0;
            let mut u_surv = 0.0;
            for (w, u) in self.weights.iter().zip(&self.squares) {
                if rng.random::<f64>() < survival {
                    w_surv += w;
                    u_surv += u;
                }
            }
            let value = self.pattern_error_from_sums(w_surv, u_surv)?;
            degenerate += u64::from(value.degenerate);
            let delta = value.probability - mean;
            mean += delta / sample as f64;
            m2 += delta * (value.probability - mean);
        }
        let stderr = if budget > 1 {
            (m2 / (budget - 1) as f64 / budget as f64).sqrt()
        } else {
            0.0
        };
        Ok(ErrorEstimate {
            probability: mean.clamp(0.0, 1.0),
            stderr,
            mode: AveragingMode::Sampled { budget },
            degenerate_patterns: degenerate,
        })
    }
}
