//! Exact weight distributions and weight-distribution bound evaluators.
//!
//! Distributions are computed by exhaustive Gray-code enumeration of the
//! codeword set — never sampled — and bound evaluators work in the base-2
//! log domain so that exponents like `2^{-ηN}` never overflow a linear
//! scale.

use crate::binomial::{binom, binom_leq, log2_binom_real, log2_biguint};
use crate::caps::Caps;
use crate::codes::LinearCode;
use crate::error::{Error, Result};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::LN_2;

/// A base-2 logarithm of a nonnegative quantity. Zero is represented by
/// `-inf`; values above 1 (positive logs) are legal and flag vacuous bounds.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct LogProb {
    log2: f64,
}

impl LogProb {
    pub fn from_log2(log2: f64) -> Self {
        LogProb { log2 }
    }

    pub fn zero() -> Self {
        LogProb { log2: f64::NEG_INFINITY }
    }

    pub fn log2(&self) -> f64 {
        self.log2
    }

    /// Linear-scale value `2^log2` (may underflow to 0 or overflow to inf).
    pub fn to_f64(&self) -> f64 {
        self.log2.exp2()
    }

    pub fn is_zero(&self) -> bool {
        self.log2 == f64::NEG_INFINITY
    }

    /// True when the value exceeds 1, i.e. is vacuous as a probability bound.
    pub fn is_vacuous(&self) -> bool {
        self.log2 > 0.0
    }
}

/// Exact codeword counts per Hamming weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    n_bits: usize,
    dimension: usize,
    counts: Vec<u64>,
}

/// Serialized form: only the nonzero weights are listed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightDistributionDoc {
    pub n_bits: usize,
    pub dimension: usize,
    pub total: u64,
    pub entries: Vec<(usize, u64)>,
}

impl WeightDistribution {
    /// Build from raw counts; `counts` must have `n_bits + 1` entries summing
    /// to `2^dimension`.
    pub fn from_counts(n_bits: usize, dimension: usize, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != n_bits + 1 {
            return Err(Error::DimensionMismatch {
                context: "weight count vector",
                expected: n_bits + 1,
                got: counts.len(),
            });
        }
        if dimension >= 63 || counts.iter().sum::<u64>() != 1 << dimension {
            return Err(Error::InvalidInput(
                "counts do not sum to 2^dimension".into(),
            ));
        }
        Ok(WeightDistribution { n_bits, dimension, counts })
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Count of codewords at each weight `0..=N`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, weight: usize) -> u64 {
        self.counts[weight]
    }

    /// `2^dim`, the number of codewords.
    pub fn total(&self) -> u64 {
        1u64 << self.dimension
    }

    /// Exact probability `Pr[|c| = w]` under the uniform codeword
    /// distribution, as `(count, total)`.
    pub fn probability(&self, weight: usize) -> (u64, u64) {
        (self.counts[weight], self.total())
    }

    pub fn to_doc(&self) -> WeightDistributionDoc {
        WeightDistributionDoc {
            n_bits: self.n_bits,
            dimension: self.dimension,
            total: self.total(),
            entries: self
                .counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(w, &c)| (w, c))
                .collect(),
        }
    }

    /// CSV with a `weight,count` header and one row per nonzero weight.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,count\n");
        for (w, &c) in self.counts.iter().enumerate() {
            if c > 0 {
                out.push_str(&format!("{w},{c}\n"));
            }
        }
        out
    }
}

/// Exact weight distribution of a code by Gray-code enumeration of all
/// `2^dim` codewords. Fails when `2^dim` exceeds the enumeration cap.
pub fn weight_distribution(code: &LinearCode, caps: &Caps) -> Result<WeightDistribution> {
    let dim = code.dimension();
    if dim >= 63 {
        return Err(Error::CapExceeded {
            what: "codeword enumeration",
            requested: u128::MAX,
            cap: caps.enum_codewords as u128,
        });
    }
    let total: u64 = 1 << dim;
    caps.check_enum(total as u128)?;

    let n = code.n_bits();
    const CHUNK_BITS: u32 = 14;
    let chunk_size: u64 = 1 << CHUNK_BITS.min(dim as u32);
    let n_chunks = total / chunk_size;

    let walk_chunk = |chunk: u64| -> Vec<u64> {
        let mut hist = vec![0u64; n + 1];
        let start = chunk * chunk_size;
        let mut word = code.encode_bits(gray(start));
        hist[word.weight()] += 1;
        for m in start + 1..start + chunk_size {
            // Gray step: exactly one message bit flips between m-1 and m.
            let bit = m.trailing_zeros() as usize;
            word.xor_assign(code.generator().row(bit));
            hist[word.weight()] += 1;
        }
        hist
    };

    let counts = if n_chunks <= 1 {
        walk_chunk(0)
    } else {
        (0..n_chunks)
            .into_par_iter()
            .map(walk_chunk)
            .reduce(
                || vec![0u64; n + 1],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(&b) {
                        *x += y;
                    }
                    a
                },
            )
    };

    debug_assert_eq!(counts.iter().sum::<u64>(), total);
    Ok(WeightDistribution {
        n_bits: n,
        dimension: dim,
        counts,
    })
}

#[inline]
fn gray(m: u64) -> u64 {
    m ^ (m >> 1)
}

/// The binary entropy function, base 2. Endpoints map to 0 by continuity.
pub fn binary_entropy(a: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::domain(format!("entropy argument {a} outside [0,1]")));
    }
    if a == 0.0 || a == 1.0 {
        return Ok(0.0);
    }
    Ok(-(a * a.log2() + (1.0 - a) * (1.0 - a).log2()))
}

/// `1 - h((1-μ)/2)`, computed without cancellation. For small `μ` the power
/// series `Σ μ^{2i} / (i(2i-1)) / (2 ln 2)` is used.
pub fn one_minus_entropy_centered(mu: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&mu));
    if mu < 1e-2 {
        let mu2 = mu * mu;
        let mut term = mu2;
        let mut sum = 0.0;
        let mut i = 1usize;
        while term > f64::EPSILON * sum || i == 1 {
            sum += term / (i as f64 * (2 * i - 1) as f64);
            term *= mu2;
            i += 1;
        }
        sum / (2.0 * LN_2)
    } else {
        ((1.0 - mu) * (-mu).ln_1p() + (1.0 + mu) * mu.ln_1p()) / (2.0 * LN_2)
    }
}

/// The weight-distribution bound for transitive codes:
/// `Pr[|c| = αN] ≤ 2^{-(1-h(α)) dim}` for `α ∈ (0,1)`.
pub fn transitive_weight_bound(dim: f64, n_bits: f64, alpha: f64) -> Result<LogProb> {
    if n_bits < 1.0 || !(0.0..=n_bits).contains(&dim) {
        return Err(Error::domain("need 0 <= dim <= n_bits with n_bits >= 1"));
    }
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(Error::domain(format!("alpha {alpha} outside (0,1)")));
    }
    let h = binary_entropy(alpha)?;
    Ok(LogProb::from_log2(-(1.0 - h) * dim))
}

/// One row of a weight-bound check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightBoundEntry {
    pub weight: usize,
    pub count: u64,
    pub empirical_log2: f64,
    pub bound_log2: f64,
    /// `bound_log2 - empirical_log2`; nonnegative when the bound holds.
    pub slack_log2: f64,
}

/// Result of checking the transitive weight bound against an exact
/// distribution.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightBoundReport {
    pub code: String,
    pub n_bits: usize,
    pub dimension: usize,
    /// Caller's attestation that transitivity witnesses were verified; the
    /// bound is only meaningful for transitive codes.
    pub transitive_witnesses_ok: bool,
    pub entries: Vec<WeightBoundEntry>,
    pub all_pass: bool,
}

/// Checks `count(w)/2^dim ≤ 2^{-(1-h(w/N)) dim}` for every occupied interior
/// weight `0 < w < N` and reports the per-weight slack.
pub fn check_weight_bound(
    code: &LinearCode,
    transitive_witnesses_ok: bool,
    caps: &Caps,
) -> Result<WeightBoundReport> {
    let dist = weight_distribution(code, caps)?;
    let n = code.n_bits();
    let dim = code.dimension();
    let mut entries = Vec::new();
    let mut all_pass = true;
    for w in 1..n {
        let count = dist.count(w);
        if count == 0 {
            continue;
        }
        let empirical_log2 = (count as f64).log2() - dim as f64;
        let bound = transitive_weight_bound(dim as f64, n as f64, w as f64 / n as f64)?;
        let slack = bound.log2() - empirical_log2;
        if slack < -1e-9 {
            all_pass = false;
        }
        entries.push(WeightBoundEntry {
            weight: w,
            count,
            empirical_log2,
            bound_log2: bound.log2(),
            slack_log2: slack,
        });
    }
    Ok(WeightBoundReport {
        code: code.id(),
        n_bits: n,
        dimension: dim,
        transitive_witnesses_ok,
        entries,
        all_pass,
    })
}

/// Whether a cumulative weight bound is being read as stated (for
/// `Pr[|c| ≤ αN]`) or applied level-by-level to `Pr[|c| = αN]`. The right
/// hand side is the same formula either way; the mode is recorded in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailMode {
    Cumulative,
    PerLevel,
}

/// Reed-Muller small-weight tail bound:
/// `2^{o(N)} (1/(1-η))^{2 ln2 · αN} 2^{-ηN}`.
///
/// The unspecified `2^{o(N)}` factor is supplied by the caller in log2 form
/// (default 0, i.e. the factor 1) and must be flagged in downstream reports.
pub fn samorodnitsky_small_bound(
    eta: f64,
    alpha: f64,
    n_bits: f64,
    subexp_log2: f64,
) -> Result<LogProb> {
    if !(0.0 < eta && eta < 1.0) {
        return Err(Error::domain(format!("eta {eta} outside (0,1)")));
    }
    if !(0.0 < alpha && alpha < 0.5) {
        return Err(Error::domain(format!("alpha {alpha} outside (0,1/2)")));
    }
    let n = n_bits;
    let log2 = subexp_log2 + 2.0 * LN_2 * alpha * n * (1.0 / (1.0 - eta)).log2() - eta * n;
    Ok(LogProb::from_log2(log2))
}

/// Reed-Muller central-weight tail bound, piecewise:
/// the binomial tail `C(N, αN)/2^N` for `α ∈ [(1-η^{2ln2})/2, 1/2]`, and
/// `(1-η^{2ln2})^{-αN} (1+η^{2ln2})^{-(1-α)N}` otherwise.
pub fn samorodnitsky_center_bound(
    eta: f64,
    alpha: f64,
    n_bits: f64,
    subexp_log2: f64,
) -> Result<LogProb> {
    if !(0.0 < eta && eta < 1.0) {
        return Err(Error::domain(format!("eta {eta} outside (0,1)")));
    }
    if !(0.0 < alpha && alpha <= 0.5) {
        return Err(Error::domain(format!("alpha {alpha} outside (0,1/2]")));
    }
    let n = n_bits;
    let q = eta.powf(2.0 * LN_2);
    let threshold = (1.0 - q) / 2.0;
    let log2 = if alpha >= threshold {
        subexp_log2 + log2_binom_real(n, alpha * n) - n
    } else {
        subexp_log2 - alpha * n * (1.0 - q).log2() - (1.0 - alpha) * n * (1.0 + q).log2()
    };
    Ok(LogProb::from_log2(log2))
}

/// Verifies the entropy estimate of binomial coefficients with exact big
/// integers: `sqrt(8π/(e⁴n)) 2^{h(d/n)n} ≤ C(n,d) ≤ C(n,≤d) ≤ 2^{h(d/n)n}`.
pub fn stirling_check(n: usize, d: usize) -> Result<bool> {
    if d == 0 || 2 * d > n {
        return Err(Error::domain(format!(
            "stirling check needs 1 <= d <= n/2, got n={n}, d={d}"
        )));
    }
    let h = binary_entropy(d as f64 / n as f64)?;
    let lower = 0.5 * (8.0 * std::f64::consts::PI / (std::f64::consts::E.powi(4) * n as f64)).log2()
        + h * n as f64;
    let upper = h * n as f64;
    let mid1 = log2_biguint(&binom(n, d));
    let mid2 = log2_biguint(&binom_leq(n, d));
    Ok(lower <= mid1 && mid1 <= mid2 && mid2 <= upper)
}

/// Verifies the two-sided Pinsker estimate
/// `μ²/(2 ln2) ≤ 1 - h((1-μ)/2) ≤ μ²`.
pub fn pinsker_check(mu: f64) -> Result<bool> {
    if !(0.0 < mu && mu < 1.0) {
        return Err(Error::domain(format!("mu {mu} outside (0,1)")));
    }
    let mid = one_minus_entropy_centered(mu);
    let lower = mu * mu / (2.0 * LN_2);
    let upper = mu * mu;
    Ok(lower <= mid && mid <= upper)
}
