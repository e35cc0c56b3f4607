//! Stochastic error models and the Monte Carlo experiment harness.
//!
//! Sampling is counter-based: every trial's randomness is a pure function of
//! `(seed, trial_index)`, so results are identical no matter how trials are
//! distributed over threads.

use crate::binomial::binom;
use crate::caps::Caps;
use crate::codes::LinearCode;
use crate::collision::{collision_count_direct, rational_to_f64};
use crate::decode::{failure_bound_layered, layered_decode, ml_list_decode, shell_list_decode};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::rng::SplitMix64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// An error model on `F_2^N` with its sampling seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelModel {
    pub kind: ModelKind,
    pub n_bits: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "model")]
pub enum ModelKind {
    /// Each bit flips independently with probability ε.
    Bsc { epsilon: f64 },
    /// Uniform over the strings whose weight lies in the level set.
    Shell { levels: Vec<usize> },
}

impl ChannelModel {
    pub fn bsc(n_bits: usize, epsilon: f64, seed: u64) -> Result<Self> {
        if !(0.0 < epsilon && epsilon < 0.5) {
            return Err(Error::domain(format!("epsilon {epsilon} outside (0,1/2)")));
        }
        Ok(ChannelModel {
            kind: ModelKind::Bsc { epsilon },
            n_bits,
            seed,
        })
    }

    pub fn shell(n_bits: usize, levels: Vec<usize>, seed: u64) -> Result<Self> {
        let mut set = levels;
        set.sort_unstable();
        set.dedup();
        if set.is_empty() || *set.last().unwrap() > n_bits {
            return Err(Error::domain("shell model needs feasible weights"));
        }
        Ok(ChannelModel {
            kind: ModelKind::Shell { levels: set },
            n_bits,
            seed,
        })
    }
}

/// Cumulative weight table for shell sampling: weight `j` is chosen with
/// probability `C(N,j)/C(N,S)`, then a uniform support of that size.
struct ShellTable {
    levels: Vec<usize>,
    cumulative: Vec<f64>,
}

impl ShellTable {
    fn new(n_bits: usize, levels: &[usize]) -> Self {
        let weights: Vec<f64> = levels
            .iter()
            .map(|&j| binom(n_bits, j).to_f64().expect("desk-scale shell"))
            .collect();
        let total: f64 = weights.iter().sum();
        let mut acc = 0.0;
        let cumulative = weights
            .iter()
            .map(|w| {
                acc += w / total;
                acc
            })
            .collect();
        ShellTable {
            levels: levels.to_vec(),
            cumulative,
        }
    }

    fn sample_weight(&self, u: f64) -> usize {
        for (i, &c) in self.cumulative.iter().enumerate() {
            if u < c {
                return self.levels[i];
            }
        }
        *self.levels.last().unwrap()
    }
}

fn sample_with(model: &ChannelModel, table: Option<&ShellTable>, trial_index: u64) -> BitVector {
    let mut rng = SplitMix64::for_counter(model.seed, trial_index);
    let n = model.n_bits;
    match &model.kind {
        ModelKind::Bsc { epsilon } => {
            let mut v = BitVector::zero(n);
            for i in 0..n {
                if rng.next_bool(*epsilon) {
                    v.set(i, true);
                }
            }
            v
        }
        ModelKind::Shell { levels } => {
            let local;
            let table = match table {
                Some(t) => t,
                None => {
                    local = ShellTable::new(n, levels);
                    &local
                }
            };
            let j = table.sample_weight(rng.next_f64());
            // Partial Fisher-Yates gives a uniform size-j support.
            let mut positions: Vec<usize> = (0..n).collect();
            let mut v = BitVector::zero(n);
            for i in 0..j {
                let r = i + rng.next_below((n - i) as u64) as usize;
                positions.swap(i, r);
                v.set(positions[i], true);
            }
            v
        }
    }
}

/// Draw the error string for one trial: a pure function of
/// `(model.seed, trial_index)`.
pub fn sample_error(model: &ChannelModel, trial_index: u64) -> BitVector {
    sample_with(model, None, trial_index)
}

/// The Chernoff tail `e^{-l²/(3εN)}` for `Pr[||ρ| - εN| > l]`.
pub fn chernoff_weight_tail(epsilon: f64, n_bits: f64, l: f64) -> f64 {
    (-l * l / (3.0 * epsilon * n_bits)).exp()
}

/// Outcome of a Monte Carlo decoding experiment.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub trials: u64,
    pub failures: u64,
    pub empirical_rate: f64,
    /// 95% Wilson score interval for the failure rate.
    pub wilson_ci95: (f64, f64),
    /// log2 of the matching theoretical bound, when computable at this scale.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_log2: Option<f64>,
    /// The bound on the linear scale.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    /// True when the bound exceeds 1.
    pub bound_vacuous: bool,
    /// The level radius `l` that produced the reported bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_l: Option<u64>,
    pub seed: u64,
}

/// 95% Wilson score interval; always contains the point estimate.
pub fn wilson_ci95(failures: u64, trials: u64) -> (f64, f64) {
    assert!(trials > 0);
    let z = 1.959963984540054_f64;
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // Wilson always contains the point estimate; guard the float edges.
    let lo = (center - half).max(0.0).min(p);
    let hi = (center + half).min(1.0).max(p);
    (lo, hi)
}

/// Run a seeded decoding experiment: sample `ρ`, decode `Hρᵀ`, and count the
/// trials where `ρ` is absent from the list.
///
/// * BSC model, `l = None`: the ML decoder `D_k` over all weights; the
///   reported bound is the best layered bound over all valid `l`.
/// * BSC model, `l = Some(l)`: the layered decoder `D_{k,l}` and its bound.
/// * Shell model: the S-restricted list decoder and the tail bound
///   `sqrt(Coll_H(S)/k)`; `l` is ignored.
pub fn run_experiment(
    code: &LinearCode,
    model: &ChannelModel,
    k: usize,
    l: Option<usize>,
    trials: u64,
    caps: &Caps,
) -> Result<ExperimentResult> {
    if model.n_bits != code.n_bits() {
        return Err(Error::DimensionMismatch {
            context: "channel model length",
            expected: code.n_bits(),
            got: model.n_bits,
        });
    }
    if trials == 0 {
        return Err(Error::domain("need at least one trial"));
    }
    if k == 0 {
        return Err(Error::domain("list size k must be at least 1"));
    }
    let n = code.n_bits();
    let h = code.parity_check();
    let t = code.redundancy();
    let columns: Vec<BitVector> = (0..n).map(|c| h.column(c)).collect();
    let syndrome_len = t.max(1);

    let table = match &model.kind {
        ModelKind::Shell { levels } => Some(ShellTable::new(n, levels)),
        ModelKind::Bsc { .. } => None,
    };

    let decode = |syn: &BitVector| -> Result<Vec<BitVector>> {
        let result = match (&model.kind, l) {
            (ModelKind::Shell { levels }, _) => shell_list_decode(code, syn, levels, k, caps)?,
            (ModelKind::Bsc { epsilon }, Some(l)) => {
                layered_decode(code, syn, k, l, *epsilon, caps)?
            }
            (ModelKind::Bsc { .. }, None) => ml_list_decode(code, syn, k, n, caps)?,
        };
        Ok(result.list)
    };

    const TRIALS_PER_CHUNK: u64 = 4096;
    let n_chunks = trials.div_ceil(TRIALS_PER_CHUNK);
    let failures: u64 = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| -> Result<u64> {
            let lo = chunk * TRIALS_PER_CHUNK;
            let hi = (lo + TRIALS_PER_CHUNK).min(trials);
            let mut cache: HashMap<BitVector, Vec<BitVector>> = HashMap::new();
            let mut local_failures = 0u64;
            for trial in lo..hi {
                let rho = sample_with(model, table.as_ref(), trial);
                let mut syn = BitVector::zero(syndrome_len);
                if t > 0 {
                    for p in rho.support() {
                        syn.xor_assign(&columns[p]);
                    }
                }
                let list = match cache.get(&syn) {
                    Some(hit) => hit,
                    None => {
                        let computed = decode(&syn)?;
                        cache.entry(syn.clone()).or_insert(computed)
                    }
                };
                if !list.contains(&rho) {
                    local_failures += 1;
                }
            }
            Ok(local_failures)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;

    let (bound, bound_l) = experiment_bound(code, model, k, l, caps)?;
    let empirical_rate = failures as f64 / trials as f64;
    Ok(ExperimentResult {
        trials,
        failures,
        empirical_rate,
        wilson_ci95: wilson_ci95(failures, trials),
        bound_log2: bound.map(f64::log2),
        bound,
        bound_vacuous: bound.map(|b| b > 1.0).unwrap_or(false),
        bound_l,
        seed: model.seed,
    })
}

/// The theoretical bound matching an experiment configuration.
fn experiment_bound(
    code: &LinearCode,
    model: &ChannelModel,
    k: usize,
    l: Option<usize>,
    caps: &Caps,
) -> Result<(Option<f64>, Option<u64>)> {
    let n = code.n_bits();
    match &model.kind {
        ModelKind::Shell { levels } => {
            match collision_count_direct(code, levels, caps) {
                Ok(rep) => {
                    let coll = rational_to_f64(&rep.coll_count);
                    Ok((Some((coll / k as f64).sqrt()), None))
                }
                Err(Error::CapExceeded { .. }) => Ok((None, None)),
                Err(e) => Err(e),
            }
        }
        ModelKind::Bsc { epsilon } => {
            let target = (epsilon * n as f64).round_ties_even() as i64;
            let max_l = ((0.5 - epsilon) * n as f64).floor() as i64;
            let candidate_ls: Vec<u64> = match l {
                Some(l) => vec![l as u64],
                None => (0..=max_l.max(0) as u64).collect(),
            };
            let mut coll_cache: HashMap<usize, f64> = HashMap::new();
            let mut best: Option<(f64, u64)> = None;
            for cand in candidate_ls {
                // Levels outside [0, N] carry no probability mass; the bound
                // maximizes over the feasible levels only.
                let lo = (target - cand as i64).max(0);
                let hi = (target + cand as i64).min(n as i64);
                let mut coll_max: f64 = 0.0;
                let mut feasible = true;
                for w in lo..=hi {
                    let w = w as usize;
                    let coll = match coll_cache.get(&w) {
                        Some(&c) => c,
                        None => match collision_count_direct(code, &[w], caps) {
                            Ok(rep) => {
                                let c = rational_to_f64(&rep.coll_count);
                                coll_cache.insert(w, c);
                                c
                            }
                            Err(Error::CapExceeded { .. }) => {
                                feasible = false;
                                break;
                            }
                            Err(e) => return Err(e),
                        },
                    };
                    coll_max = coll_max.max(coll);
                }
                if !feasible {
                    continue;
                }
                let report =
                    failure_bound_layered(*epsilon, n as f64, k as u64, cand, coll_max)?;
                if best.map(|(b, _)| report.failure_bound < b).unwrap_or(true) {
                    best = Some((report.failure_bound, cand));
                }
            }
            Ok((best.map(|(b, _)| b), best.map(|(_, l)| l)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{repetition_code, rm_code};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn sampling_is_deterministic_per_trial() {
        let model = ChannelModel::bsc(16, 0.2, 42).unwrap();
        assert_eq!(sample_error(&model, 7), sample_error(&model, 7));
        assert_ne!(sample_error(&model, 7), sample_error(&model, 8));
    }

    #[test]
    fn shell_samples_have_prescribed_weight() {
        let model = ChannelModel::shell(8, vec![3], 1).unwrap();
        for trial in 0..200 {
            assert_eq!(sample_error(&model, trial).weight(), 3);
        }
        let model = ChannelModel::shell(8, vec![1, 5], 2).unwrap();
        for trial in 0..200 {
            let w = sample_error(&model, trial).weight();
            assert!(w == 1 || w == 5);
        }
    }

    #[test]
    fn tiny_epsilon_gives_zero_draws() {
        let model = ChannelModel::bsc(16, 1e-9, 3).unwrap();
        for trial in 0..10_000 {
            assert!(sample_error(&model, trial).is_zero(), "trial {trial}");
        }
    }

    #[test]
    fn chernoff_tail_values() {
        assert_eq!(chernoff_weight_tail(0.1, 100.0, 0.0), 1.0);
        let v = chernoff_weight_tail(0.1, 1e4, 1e3);
        assert!((v.ln() + 1e6 / 3e3).abs() < 1e-6);
    }

    #[test]
    fn wilson_interval_contains_estimate() {
        for (f, t) in [(0u64, 100u64), (1, 100), (50, 100), (100, 100)] {
            let (lo, hi) = wilson_ci95(f, t);
            let p = f as f64 / t as f64;
            assert!(lo <= p && p <= hi, "({f},{t})");
        }
    }

    #[test]
    fn full_shell_list_never_fails() {
        // Every coset of the repetition code has exactly 2 members in the
        // full shell, so k = 2 covers them all.
        let code = repetition_code(1, 3).unwrap();
        let model = ChannelModel::shell(3, vec![0, 1, 2, 3], 5).unwrap();
        let result = run_experiment(&code, &model, 2, None, 500, &caps()).unwrap();
        assert_eq!(result.failures, 0);
        assert!(result.bound.unwrap() >= 0.0);
    }

    #[test]
    fn experiment_is_deterministic_across_thread_counts() {
        let code = rm_code(4, 1).unwrap();
        let model = ChannelModel::bsc(16, 0.05, 11).unwrap();
        let run = || {
            run_experiment(&code, &model, 2, None, 3000, &caps())
                .unwrap()
                .failures
        };
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(run);
        let multi = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(run);
        assert_eq!(single, multi);
    }

    #[test]
    fn doubling_trials_shrinks_the_interval() {
        let code = rm_code(4, 1).unwrap();
        let model = ChannelModel::bsc(16, 0.05, 99).unwrap();
        let r1 = run_experiment(&code, &model, 1, None, 2_000, &caps()).unwrap();
        let r2 = run_experiment(&code, &model, 1, None, 4_000, &caps()).unwrap();
        let w1 = r1.wilson_ci95.1 - r1.wilson_ci95.0;
        let w2 = r2.wilson_ci95.1 - r2.wilson_ci95.0;
        let ratio = w1 / w2;
        assert!(
            (ratio - 2f64.sqrt()).abs() < 0.35,
            "CI width ratio {ratio} not near sqrt(2)"
        );
    }

    #[test]
    fn layered_experiment_reports_its_own_l() {
        let code = rm_code(4, 1).unwrap();
        let model = ChannelModel::bsc(16, 0.05, 7).unwrap();
        let result = run_experiment(&code, &model, 4, Some(1), 1000, &caps()).unwrap();
        assert_eq!(result.bound_l, Some(1));
        assert!(result.bound.is_some());
    }

    #[test]
    fn model_validation() {
        assert!(ChannelModel::bsc(8, 0.5, 0).is_err());
        assert!(ChannelModel::bsc(8, 0.0, 0).is_err());
        assert!(ChannelModel::shell(8, vec![], 0).is_err());
        assert!(ChannelModel::shell(8, vec![9], 0).is_err());
    }
}
