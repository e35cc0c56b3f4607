//! Syndrome list decoders and list-size / failure-probability bound
//! evaluators.
//!
//! The max-likelihood decoder returns the `k` coset members with the
//! smallest `(weight, support)` key; the support tie-break makes the
//! set-valued argmin deterministic. The layered decoder restricts to weight
//! levels around `εN` with a per-level quota of `⌊k/(2l+1)⌋`.
//!
//! Bound evaluators are pure formula evaluations in the base-2 log domain.
//! They accept `N` as a float because the regimes of interest
//! (`N > (5/ε)^20`) far exceed any integer type, they never clamp to `[0,1]`,
//! and they flag vacuous values instead of hiding them.

use crate::binomial::{binom, log2_binom_real, log2_sum_exp2, Combinations};
use crate::caps::Caps;
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::weights::{binary_entropy, WeightDistribution};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use std::f64::consts::{E, LOG2_E};

/// Output of a list decoder: error-string candidates ordered by
/// `(weight, support-lex)`, all sharing the queried syndrome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub list: Vec<BitVector>,
    /// True when fewer than `k` candidates were found within the searched
    /// weight levels.
    pub truncated: bool,
}

/// Core engine: scan the given weight levels in increasing order, visiting
/// each shell in support-lex order, and keep coset members up to `per_level`
/// per level and `budget` in total.
fn coset_list(
    code: &LinearCode,
    syndrome: &BitVector,
    weights: &[usize],
    per_level: Option<usize>,
    budget: usize,
    caps: &Caps,
) -> Result<DecodeResult> {
    let n = code.n_bits();
    let t = code.redundancy();
    let h = code.parity_check();
    let expected_len = t.max(1);
    if syndrome.len() != expected_len {
        return Err(Error::DimensionMismatch {
            context: "syndrome length",
            expected: expected_len,
            got: syndrome.len(),
        });
    }
    let columns: Vec<BitVector> = (0..n).map(|c| h.column(c)).collect();
    let zero_syndrome = BitVector::zero(expected_len);

    let mut list: Vec<BitVector> = Vec::new();
    let mut scanned: u128 = 0;
    for &w in weights {
        if list.len() >= budget {
            break;
        }
        let level_size = binom(n, w).to_u128().unwrap_or(u128::MAX);
        if scanned.saturating_add(level_size) > caps.shell_size as u128 {
            return Err(Error::CapExceeded {
                what: "shell enumeration",
                requested: scanned.saturating_add(level_size),
                cap: caps.shell_size as u128,
            });
        }
        scanned += level_size;
        let quota = per_level.unwrap_or(budget);
        let mut taken = 0usize;
        let mut combos = Combinations::new(n, w);
        let mut syn = zero_syndrome.clone();
        loop {
            if taken >= quota || list.len() >= budget {
                break;
            }
            let Some(positions) = combos.next_ref() else { break };
            syn.clear();
            for &p in positions {
                syn.xor_assign(&columns[p]);
            }
            if t == 0 || &syn == syndrome {
                list.push(BitVector::from_support(n, positions));
                taken += 1;
            }
        }
    }
    let truncated = list.len() < budget;
    Ok(DecodeResult { list, truncated })
}

/// The max-likelihood list decoder `D_k`: the `k` lowest-`(weight, lex)`
/// vectors `z` with `Hzᵀ = syndrome` and `|z| ≤ weight_cap`.
pub fn ml_list_decode(
    code: &LinearCode,
    syndrome: &BitVector,
    k: usize,
    weight_cap: usize,
    caps: &Caps,
) -> Result<DecodeResult> {
    if k == 0 {
        return Err(Error::domain("list size k must be at least 1"));
    }
    if weight_cap > code.n_bits() {
        return Err(Error::domain(format!(
            "weight cap {weight_cap} exceeds N = {}",
            code.n_bits()
        )));
    }
    let weights: Vec<usize> = (0..=weight_cap).collect();
    coset_list(code, syndrome, &weights, None, k, caps)
}

/// The layered decoder `D_{k,l}`: for each weight level in
/// `{round(εN) - l, …, round(εN) + l}` it returns up to `⌊k/(2l+1)⌋`
/// support-lex-smallest solutions of that exact weight, concatenated in
/// increasing weight. `εN` is rounded to the nearest integer, ties to even.
pub fn layered_decode(
    code: &LinearCode,
    syndrome: &BitVector,
    k: usize,
    l: usize,
    epsilon: f64,
    caps: &Caps,
) -> Result<DecodeResult> {
    if k == 0 {
        return Err(Error::domain("list size k must be at least 1"));
    }
    if !(0.0 < epsilon && epsilon < 1.0) {
        return Err(Error::domain(format!("epsilon {epsilon} outside (0,1)")));
    }
    let n = code.n_bits();
    let target = (epsilon * n as f64).round_ties_even() as i64;
    let lo = target - l as i64;
    let hi = target + l as i64;
    if lo < 0 || hi > n as i64 {
        return Err(Error::domain(format!(
            "levels {{{lo}..{hi}}} leave [0, {n}]"
        )));
    }
    let per_level = k / (2 * l + 1);
    let weights: Vec<usize> = (lo..=hi).map(|w| w as usize).collect();
    coset_list(code, syndrome, &weights, Some(per_level), k, caps)
}

/// Decoder restricted to weight levels in `S`: the first `k` coset members
/// whose weight lies in `S`, in `(weight, support-lex)` order. This is the
/// right decoder when the error is promised to lie in the shell `S`.
pub fn shell_list_decode(
    code: &LinearCode,
    syndrome: &BitVector,
    level_set: &[usize],
    k: usize,
    caps: &Caps,
) -> Result<DecodeResult> {
    if k == 0 {
        return Err(Error::domain("list size k must be at least 1"));
    }
    let mut set = level_set.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.is_empty() || *set.last().unwrap() > code.n_bits() {
        return Err(Error::domain("invalid level set"));
    }
    coset_list(code, syndrome, &set, None, k, caps)
}

/// The codeword-decoder lift: from an error-string list `D(Hzᵀ)` build
/// `d(z) = {z + y : y ∈ D(Hzᵀ)}`. If the true error is in the list, the
/// transmitted codeword is in the output.
pub fn lift_decoder(
    code: &LinearCode,
    received: &BitVector,
    error_list: &DecodeResult,
) -> Result<Vec<BitVector>> {
    if received.len() != code.n_bits() {
        return Err(Error::DimensionMismatch {
            context: "received word length",
            expected: code.n_bits(),
            got: received.len(),
        });
    }
    error_list
        .list
        .iter()
        .map(|y| received.xor(y))
        .collect()
}

impl DecodeResult {
    /// Trace of one decoding as CSV: `syndrome,rank,weight,vector_hex`, one
    /// row per list entry in output order.
    pub fn to_trace_csv(&self, syndrome: &BitVector) -> String {
        let mut out = String::from("syndrome,rank,weight,vector_hex\n");
        let syn_hex = syndrome.to_hex();
        for (rank, z) in self.list.iter().enumerate() {
            out.push_str(&format!("{syn_hex},{rank},{},{}\n", z.weight(), z.to_hex()));
        }
        out
    }
}

/// Evaluation of a list-size / failure-probability bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub epsilon: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    pub n_bits: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u64>,
    /// log2 of the failure-probability bound; never clamped to [0,1].
    pub failure_bound_log2: f64,
    /// The same bound on the linear scale (may exceed 1).
    pub failure_bound: f64,
    /// True when the failure bound exceeds 1 and is therefore vacuous.
    pub vacuous: bool,
    /// log2 of the list size.
    pub list_size_log2: f64,
    /// log2 of the individual additive terms, when the bound has several.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub terms_log2: Vec<f64>,
    pub regime_notes: String,
}

fn asymptotic_regime_note(epsilon: f64, n_bits: f64) -> String {
    let needed = 20.0 * (5.0 / epsilon).log2();
    if n_bits.log2() > needed {
        format!("N > (5/eps)^20 holds (log2 N = {:.2} > {:.2})", n_bits.log2(), needed)
    } else {
        format!(
            "N > (5/eps)^20 fails (log2 N = {:.2} <= {:.2}); bound evaluated as a formula only",
            n_bits.log2(),
            needed
        )
    }
}

/// The layered failure bound
/// `e^{-l²/(3εN)} + sqrt((2l+1) · coll_max / k)` with `coll_max` the largest
/// single-level collision count over `{εN ± l}`, supplied by the caller.
pub fn failure_bound_layered(
    epsilon: f64,
    n_bits: f64,
    k: u64,
    l: u64,
    coll_max: f64,
) -> Result<BoundReport> {
    if !(0.0 < epsilon && epsilon < 0.5) {
        return Err(Error::domain(format!("epsilon {epsilon} outside (0,1/2)")));
    }
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    if (l as f64) > (0.5 - epsilon) * n_bits {
        return Err(Error::domain(format!(
            "l = {l} exceeds (1/2 - eps) N = {}",
            (0.5 - epsilon) * n_bits
        )));
    }
    if coll_max < 0.0 {
        return Err(Error::domain("collision count cannot be negative"));
    }
    let l_f = l as f64;
    let chernoff = (-l_f * l_f / (3.0 * epsilon * n_bits)).exp();
    let second = ((2.0 * l_f + 1.0) * coll_max / k as f64).sqrt();
    let failure = chernoff + second;
    Ok(BoundReport {
        epsilon,
        eta: None,
        n_bits,
        k: Some(k),
        l: Some(l),
        failure_bound_log2: failure.log2(),
        failure_bound: failure,
        vacuous: failure > 1.0,
        list_size_log2: (k as f64).log2(),
        terms_log2: vec![chernoff.log2(), second.log2()],
        regime_notes: String::new(),
    })
}

/// The generic list bound driven by a dual weight distribution, evaluated
/// verbatim in log2: with `ε̃ = ε + N^{-1/4}`,
/// `β = (1 - 2 sqrt(ε̃(1-ε̃)))/2` and `B = {βN, …, (1-β)N}`,
///
/// ```text
/// term1 = e^{-sqrt(N)/(3ε)}
/// term2 = sqrt(3 N^{3/4} / k) · max_{j∈B} sqrt(Pr[|vH|=j] · 2^N / C(N,j))
/// term3 = sqrt(3/k) · 2^{4N^{4/5}} · sqrt(N^{7/4}/C(N, ε̃N)) · (e²/ε̃)^{ε̃N}
///         · max_{j∉B} sqrt(Pr[|vH|=j] · (1/2 - j/N)^{2ε̃N})
/// ```
///
/// The faraway factor uses `|1/2 - j/N|`, which is how the term is used; at
/// `j = N/2` it vanishes. Empty maxima are `-inf`. The `2^{4N^{4/5}}` factor
/// makes the bound vacuous at desk-scale `N`; it is reported, not hidden.
pub fn sufficient_weight_list_bound(
    epsilon: f64,
    n_bits: usize,
    k: u64,
    dual_weights: &WeightDistribution,
) -> Result<BoundReport> {
    if !(0.0 < epsilon && epsilon < 0.5) {
        return Err(Error::domain(format!("epsilon {epsilon} outside (0,1/2)")));
    }
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    if dual_weights.n_bits() != n_bits {
        return Err(Error::DimensionMismatch {
            context: "dual weight distribution length",
            expected: n_bits,
            got: dual_weights.n_bits(),
        });
    }
    let n = n_bits as f64;
    let eps_tilde = epsilon + n.powf(-0.25);
    if eps_tilde >= 1.0 {
        return Err(Error::domain(format!(
            "eps_tilde = {eps_tilde} >= 1; the bound's quantities are undefined"
        )));
    }
    let t = dual_weights.dimension() as f64;
    let beta = 0.5 * (1.0 - 2.0 * (eps_tilde * (1.0 - eps_tilde)).sqrt());
    let in_b = |j: usize| -> bool {
        let jf = j as f64;
        beta * n <= jf && jf <= (1.0 - beta) * n
    };
    // log2 Pr[|vH| = j] from the exact dual counts.
    let log2_pr = |j: usize| -> f64 {
        let c = dual_weights.count(j);
        if c == 0 {
            f64::NEG_INFINITY
        } else {
            (c as f64).log2() - t
        }
    };

    let term1 = -n.sqrt() / (3.0 * epsilon) * LOG2_E;

    let mut central_max = f64::NEG_INFINITY;
    let mut faraway_max = f64::NEG_INFINITY;
    for j in 0..=n_bits {
        let lp = log2_pr(j);
        if lp == f64::NEG_INFINITY {
            continue;
        }
        if in_b(j) {
            central_max = central_max.max(lp + n - log2_binom_real(n, j as f64));
        } else {
            let gap = (0.5 - j as f64 / n).abs();
            let contrib = if gap == 0.0 {
                f64::NEG_INFINITY
            } else {
                lp + 2.0 * eps_tilde * n * gap.log2()
            };
            faraway_max = faraway_max.max(contrib);
        }
    }

    let term2 = 0.5 * ((3.0 * n.powf(0.75)).log2() - (k as f64).log2()) + 0.5 * central_max;
    let term3 = 0.5 * (3.0f64.log2() - (k as f64).log2())
        + 4.0 * n.powf(0.8)
        + 0.5 * (1.75 * n.log2() - log2_binom_real(n, eps_tilde * n))
        + eps_tilde * n * (E.powi(2) / eps_tilde).log2()
        + 0.5 * faraway_max;

    let failure_log2 = log2_sum_exp2(log2_sum_exp2(term1, term2), term3);
    let mut notes = asymptotic_regime_note(epsilon, n);
    if eps_tilde >= 0.5 {
        notes = format!(
            "eps_tilde = {eps_tilde:.4} >= 1/2 (N far below this bound's asymptotic regime); {notes}"
        );
    }
    Ok(BoundReport {
        epsilon,
        eta: None,
        n_bits: n,
        k: Some(k),
        l: None,
        failure_bound_log2: failure_log2,
        failure_bound: failure_log2.exp2(),
        vacuous: failure_log2 > 0.0,
        list_size_log2: (k as f64).log2(),
        terms_log2: vec![term1, term2, term3],
        regime_notes: notes,
    })
}

/// The transitive-code list bound: list size
/// `N^7 · 2^{(εN + N^{3/4}) log2(e⁴/(1-η))}` and failure probability
/// `e^{-sqrt(N)/(3ε)} + 1/sqrt(N)`.
pub fn transitive_list_bound(epsilon: f64, eta: f64, n_bits: f64) -> Result<BoundReport> {
    check_list_params(epsilon, eta, n_bits)?;
    let n = n_bits;
    let list_size_log2 = 7.0 * n.log2()
        + (epsilon * n + n.powf(0.75)) * (E.powi(4) / (1.0 - eta)).log2();
    let (failure, failure_log2) = headline_failure(epsilon, n);
    Ok(BoundReport {
        epsilon,
        eta: Some(eta),
        n_bits: n,
        k: None,
        l: None,
        failure_bound_log2: failure_log2,
        failure_bound: failure,
        vacuous: failure > 1.0,
        list_size_log2,
        terms_log2: Vec::new(),
        regime_notes: asymptotic_regime_note(epsilon, n),
    })
}

/// The Reed-Muller list bound: list size
/// `N^7 · 2^{8N^{7/8} log2(1/(1-η))} · (2^{4εN} + 2^{(ε log2(ε/(1-η)²) + 4ε + (1-η)²)N})`
/// and the same failure probability as the transitive bound.
pub fn rm_list_bound(epsilon: f64, eta: f64, n_bits: f64) -> Result<BoundReport> {
    check_list_params(epsilon, eta, n_bits)?;
    let n = n_bits;
    let gamma = 1.0 - eta;
    let exp_a = 4.0 * epsilon * n;
    let exp_b = (epsilon * (epsilon / (gamma * gamma)).log2() + 4.0 * epsilon + gamma * gamma) * n;
    let list_size_log2 =
        7.0 * n.log2() + 8.0 * n.powf(7.0 / 8.0) * (1.0 / gamma).log2() + log2_sum_exp2(exp_a, exp_b);
    let (failure, failure_log2) = headline_failure(epsilon, n);
    Ok(BoundReport {
        epsilon,
        eta: Some(eta),
        n_bits: n,
        k: None,
        l: None,
        failure_bound_log2: failure_log2,
        failure_bound: failure,
        vacuous: failure > 1.0,
        list_size_log2,
        terms_log2: vec![exp_a, exp_b],
        regime_notes: asymptotic_regime_note(epsilon, n),
    })
}

/// Corollary form for transitive codes of dimension below `(1 - ε^{0.99})N`:
/// list size `2^{(0.99 h(ε) + 5ε)N}`.
pub fn corollary_transitive_bound(epsilon: f64, n_bits: f64) -> Result<BoundReport> {
    if !(0.0 < epsilon && epsilon < 0.5) {
        return Err(Error::domain(format!("epsilon {epsilon} outside (0,1/2)")));
    }
    let n = n_bits;
    let list_size_log2 = (0.99 * binary_entropy(epsilon)? + 5.0 * epsilon) * n;
    let (failure, failure_log2) = headline_failure(epsilon, n);
    Ok(BoundReport {
        epsilon,
        eta: None,
        n_bits: n,
        k: None,
        l: None,
        failure_bound_log2: failure_log2,
        failure_bound: failure,
        vacuous: failure > 1.0,
        list_size_log2,
        terms_log2: Vec::new(),
        regime_notes: format!(
            "valid for dim C < (1 - eps^0.99) N; {}",
            asymptotic_regime_note(epsilon, n)
        ),
    })
}

/// Corollary form for Reed-Muller codes of dimension below `(1 - 10ε)N`:
/// list size `2^{(h(ε) - 3ε + 100ε²)N}`.
pub fn corollary_rm_bound(epsilon: f64, n_bits: f64) -> Result<BoundReport> {
    if !(0.0 < epsilon && epsilon < 0.5) {
        return Err(Error::domain(format!("epsilon {epsilon} outside (0,1/2)")));
    }
    let n = n_bits;
    let list_size_log2 =
        (binary_entropy(epsilon)? - 3.0 * epsilon + 100.0 * epsilon * epsilon) * n;
    let (failure, failure_log2) = headline_failure(epsilon, n);
    Ok(BoundReport {
        epsilon,
        eta: None,
        n_bits: n,
        k: None,
        l: None,
        failure_bound_log2: failure_log2,
        failure_bound: failure,
        vacuous: failure > 1.0,
        list_size_log2,
        terms_log2: Vec::new(),
        regime_notes: format!(
            "valid for dim C < (1 - 10 eps) N; {}",
            asymptotic_regime_note(epsilon, n)
        ),
    })
}

fn check_list_params(epsilon: f64, eta: f64, n_bits: f64) -> Result<()> {
    if !(0.0 < epsilon && epsilon < 0.5) {
        return Err(Error::domain(format!("epsilon {epsilon} outside (0,1/2)")));
    }
    if !(0.0 < eta && eta < 1.0) {
        return Err(Error::domain(format!("eta {eta} outside (0,1)")));
    }
    if n_bits < 1.0 {
        return Err(Error::domain("N must be at least 1"));
    }
    Ok(())
}

fn headline_failure(epsilon: f64, n: f64) -> (f64, f64) {
    let failure = (-n.sqrt() / (3.0 * epsilon)).exp() + n.sqrt().recip();
    (failure, failure.log2())
}

/// Error model for the exact failure oracle.
#[derive(Debug, Clone, PartialEq)]
pub enum OracleModel {
    /// Uniform over the weight shell `S`; decodes with the S-restricted list.
    Shell(Vec<usize>),
    /// ε-noisy errors with exact rational ε; decodes with the ML list.
    Bsc { eps_num: u64, eps_den: u64 },
}

/// Exact failure probability of the list decoder by full-space enumeration:
/// the probability, over all `2^N` error strings weighted by the model, that
/// the true error is absent from the decoder's output list.
pub fn exact_failure_probability(
    code: &LinearCode,
    model: &OracleModel,
    k: usize,
    weight_cap: usize,
    caps: &Caps,
) -> Result<BigRational> {
    let n = code.n_bits();
    if n >= 40 {
        return Err(Error::CapExceeded {
            what: "full-space oracle",
            requested: u128::MAX,
            cap: caps.oracle_space as u128,
        });
    }
    caps.check_oracle(1u128 << n)?;
    if let OracleModel::Bsc { eps_num, eps_den } = model {
        if *eps_den == 0 || *eps_num == 0 || 2 * eps_num >= *eps_den {
            return Err(Error::domain("need exact rational eps in (0, 1/2)"));
        }
    }

    let h = code.parity_check();
    let t = code.redundancy();
    let syndrome_len = t.max(1);
    let columns: Vec<BitVector> = (0..n).map(|c| h.column(c)).collect();

    // Decode once per distinct syndrome.
    let mut cache: HashMap<BitVector, HashSet<BitVector>> = HashMap::new();

    // Walk all error strings in Gray order, maintaining the syndrome.
    let mut failing_per_weight = vec![BigUint::zero(); n + 1];
    let mut z = BitVector::zero(n);
    let mut syn = BitVector::zero(syndrome_len);
    let total: u64 = 1 << n;
    for m in 0..total {
        if m > 0 {
            let bit = m.trailing_zeros() as usize;
            z.set(bit, !z.get(bit));
            if t > 0 {
                syn.xor_assign(&columns[bit]);
            }
        }
        let relevant = match model {
            OracleModel::Shell(set) => set.contains(&z.weight()),
            OracleModel::Bsc { .. } => true,
        };
        if !relevant {
            continue;
        }
        if !cache.contains_key(&syn) {
            let result = match model {
                OracleModel::Shell(set) => shell_list_decode(code, &syn, set, k, caps)?,
                OracleModel::Bsc { .. } => ml_list_decode(code, &syn, k, weight_cap, caps)?,
            };
            cache.insert(syn.clone(), result.list.into_iter().collect());
        }
        let list = &cache[&syn];
        if !list.contains(&z) {
            failing_per_weight[z.weight()] += 1u32;
        }
    }

    match model {
        OracleModel::Shell(set) => {
            let mut sorted = set.clone();
            sorted.sort_unstable();
            sorted.dedup();
            let shell = crate::binomial::binom_sum(n, &sorted);
            let failing: BigUint = failing_per_weight.into_iter().sum();
            Ok(BigRational::new(BigInt::from(failing), BigInt::from(shell)))
        }
        OracleModel::Bsc { eps_num, eps_den } => {
            // Σ_w failing(w) · a^w (b-a)^{N-w} / b^N with ε = a/b.
            let a = BigUint::from(*eps_num);
            let b_minus_a = BigUint::from(eps_den - eps_num);
            let mut numerator = BigUint::zero();
            for (w, count) in failing_per_weight.into_iter().enumerate() {
                if count.is_zero() {
                    continue;
                }
                numerator += count * a.pow(w as u32) * b_minus_a.pow((n - w) as u32);
            }
            let denominator = BigUint::from(*eps_den).pow(n as u32);
            Ok(BigRational::new(
                BigInt::from(numerator),
                BigInt::from(denominator),
            ))
        }
    }
}
