//! Syndrome collision counts over weight shells.
//!
//! For a parity check `H` and a level set `S`, the collision count
//! `Coll_H(S) = C(N,S) · Σ_x Pr_{z~λ_S}[Hzᵀ = x]²` measures how far the
//! syndrome map is from injective on the shell: it is exactly 1 when the map
//! is injective and grows with the number of collisions.
//!
//! Two independent computations are provided: the direct one from the
//! syndrome histogram, and the Fourier one from the dual weight distribution
//! and the exact level-coefficient numerators. Both produce exact rationals
//! and must agree bit for bit.

use crate::binomial::{binom_sum, Combinations};
use crate::caps::Caps;
use crate::codes::{dual_code, LinearCode};
use crate::error::{Error, Result};
use crate::fourier::character_row;
use crate::gf2::BitVector;
use crate::weights::weight_distribution;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Which route produced a collision count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CollisionMethod {
    Direct,
    Fourier,
}

/// An exact collision count, with the syndrome histogram when the direct
/// method produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct CollisionReport {
    pub code_id: String,
    pub level_set: Vec<usize>,
    pub coll_count: BigRational,
    pub method: CollisionMethod,
    /// Syndrome (canonical hex) → number of shell members mapping to it.
    pub syndrome_histogram: Option<HashMap<String, u64>>,
}

impl CollisionReport {
    /// The syndrome map is injective on the shell iff `Coll_H(S) = 1`.
    pub fn injective(&self) -> bool {
        self.coll_count == BigRational::one()
    }

    pub fn coll_as_f64(&self) -> f64 {
        rational_to_f64(&self.coll_count)
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Out-of-range for direct conversion; go through logs.
        let ln = crate::binomial::log2_biguint(r.numer().magnitude())
            - crate::binomial::log2_biguint(r.denom().magnitude());
        let sign = if r.numer().sign() == num_bigint::Sign::Minus { -1.0 } else { 1.0 };
        sign * ln.exp2()
    })
}

fn validated_set(n_bits: usize, level_set: &[usize]) -> Result<Vec<usize>> {
    if level_set.is_empty() {
        return Err(Error::domain("level set must be nonempty"));
    }
    let mut s = level_set.to_vec();
    s.sort_unstable();
    s.dedup();
    if *s.last().unwrap() > n_bits {
        return Err(Error::domain(format!(
            "level {} exceeds N = {n_bits}",
            s.last().unwrap()
        )));
    }
    Ok(s)
}

fn check_shell_cap(n_bits: usize, set: &[usize], caps: &Caps) -> Result<()> {
    let size = binom_sum(n_bits, set);
    let requested = size.to_u128().unwrap_or(u128::MAX);
    caps.check_shell(requested)
}

/// Syndrome histogram of the weight shell `S`: for each syndrome value, the
/// number of shell members mapping to it. Parallelized over the leading
/// support position; the merge is a plain additive union, so the result is
/// independent of the partition.
pub fn shell_syndrome_histogram(
    code: &LinearCode,
    level_set: &[usize],
    caps: &Caps,
) -> Result<HashMap<BitVector, u64>> {
    let set = validated_set(code.n_bits(), level_set)?;
    check_shell_cap(code.n_bits(), &set, caps)?;
    let n = code.n_bits();
    let h = code.parity_check();
    let t = code.redundancy();
    let columns: Vec<BitVector> = (0..n).map(|c| h.column(c)).collect();
    let syndrome_len = t.max(1);

    // One task per (weight, leading position); weight-0 contributes the zero
    // vector alone.
    let mut tasks: Vec<(usize, Option<usize>)> = Vec::new();
    for &j in &set {
        if j == 0 {
            tasks.push((0, None));
        } else {
            for lead in 0..=(n - j) {
                tasks.push((j, Some(lead)));
            }
        }
    }

    let run_task = |&(j, lead): &(usize, Option<usize>)| -> HashMap<BitVector, u64> {
        let mut local: HashMap<BitVector, u64> = HashMap::new();
        match lead {
            None => {
                *local.entry(BitVector::zero(syndrome_len)).or_insert(0) += 1;
            }
            Some(lead) => {
                let mut rest = Combinations::with_lower_bound(n, j - 1, lead + 1);
                let lead_syndrome = &columns[lead];
                let mut syn = BitVector::zero(syndrome_len);
                while let Some(positions) = rest.next_ref() {
                    syn.clear();
                    syn.xor_assign(lead_syndrome);
                    for &p in positions {
                        syn.xor_assign(&columns[p]);
                    }
                    if let Some(v) = local.get_mut(&syn) {
                        *v += 1;
                    } else {
                        local.insert(syn.clone(), 1);
                    }
                }
            }
        }
        local
    };

    let histogram = tasks
        .par_iter()
        .map(run_task)
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    Ok(histogram)
}

/// The set of S-colliders of `z`: shell members sharing `z`'s syndrome,
/// in (weight, support-lex) order. Contains `z` itself whenever `|z| ∈ S`.
pub fn colliders(
    code: &LinearCode,
    z: &BitVector,
    level_set: &[usize],
    caps: &Caps,
) -> Result<Vec<BitVector>> {
    let set = validated_set(code.n_bits(), level_set)?;
    check_shell_cap(code.n_bits(), &set, caps)?;
    let n = code.n_bits();
    let h = code.parity_check();
    let target = h.syndrome(z)?;
    let columns: Vec<BitVector> = (0..n).map(|c| h.column(c)).collect();
    let syndrome_len = code.redundancy().max(1);

    let mut out = Vec::new();
    for &j in &set {
        let mut combos = Combinations::new(n, j);
        while let Some(positions) = combos.next_ref() {
            let mut syn = BitVector::zero(syndrome_len);
            for &p in positions {
                syn.xor_assign(&columns[p]);
            }
            if syn == target {
                out.push(BitVector::from_support(n, positions));
            }
        }
    }
    Ok(out)
}

/// `Coll_H(S)` from the syndrome histogram: `Σ_x A_x² / C(N,S)`.
pub fn collision_count_direct(
    code: &LinearCode,
    level_set: &[usize],
    caps: &Caps,
) -> Result<CollisionReport> {
    let set = validated_set(code.n_bits(), level_set)?;
    let histogram = shell_syndrome_histogram(code, &set, caps)?;
    let mut sum_sq = BigUint::zero();
    for &count in histogram.values() {
        let c = BigUint::from(count);
        sum_sq += &c * &c;
    }
    let shell = binom_sum(code.n_bits(), &set);
    let coll = BigRational::new(BigInt::from(sum_sq), BigInt::from(shell));
    Ok(CollisionReport {
        code_id: code.id(),
        level_set: set,
        coll_count: coll,
        method: CollisionMethod::Direct,
        syndrome_histogram: Some(
            histogram
                .into_iter()
                .map(|(k, v)| (k.to_hex(), v))
                .collect(),
        ),
    })
}

/// `Coll_H(S)` via Parseval: assembled as the exact integer identity
/// `Σ_j dual_count(j) · num(S, 1_j)² / (C(N,S) · 2^t)`,
/// where `dual_count(j)` is the number of dual codewords of weight `j`.
pub fn collision_count_fourier(
    code: &LinearCode,
    level_set: &[usize],
    caps: &Caps,
) -> Result<CollisionReport> {
    let set = validated_set(code.n_bits(), level_set)?;
    let n = code.n_bits();
    let t = code.redundancy();
    let dual_dist = weight_distribution(&dual_code(code), caps)?;

    let mut numerator = BigUint::zero();
    for j in 0..=n {
        let count = dual_dist.count(j);
        if count == 0 {
            continue;
        }
        let row = character_row(n, j, caps)?;
        let num: BigInt = set.iter().map(|&m| row[m].clone()).sum();
        numerator += BigUint::from(count) * (&num * &num).magnitude();
    }
    let denominator = binom_sum(n, &set) << t;
    let coll = BigRational::new(BigInt::from(numerator), BigInt::from(denominator));
    Ok(CollisionReport {
        code_id: code.id(),
        level_set: set,
        coll_count: coll,
        method: CollisionMethod::Fourier,
        syndrome_histogram: None,
    })
}

/// The list-size tail bound and its exact counterpart:
/// `Pr_{ρ~λ_S}[|Ω_ρ^S| > k] ≤ sqrt(Coll_H(S)/k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailBound {
    pub k: u64,
    pub coll: BigRational,
    /// `sqrt(Coll/k)`, the Cauchy-Schwarz bound.
    pub bound: f64,
    /// Exact `Pr[|Ω_ρ^S| > k]` from the histogram.
    pub exact_tail: BigRational,
}

pub fn list_tail_bound(
    code: &LinearCode,
    level_set: &[usize],
    k: u64,
    caps: &Caps,
) -> Result<TailBound> {
    if k == 0 {
        return Err(Error::domain("list size k must be at least 1"));
    }
    let set = validated_set(code.n_bits(), level_set)?;
    let histogram = shell_syndrome_histogram(code, &set, caps)?;
    let shell = binom_sum(code.n_bits(), &set);

    let mut sum_sq = BigUint::zero();
    let mut heavy_mass = BigUint::zero();
    for &count in histogram.values() {
        let c = BigUint::from(count);
        sum_sq += &c * &c;
        if count > k {
            heavy_mass += &c;
        }
    }
    let coll = BigRational::new(BigInt::from(sum_sq), BigInt::from(shell.clone()));
    let exact_tail = BigRational::new(BigInt::from(heavy_mass), BigInt::from(shell));
    let bound = (rational_to_f64(&coll) / k as f64).sqrt();
    Ok(TailBound {
        k,
        coll,
        bound,
        exact_tail,
    })
}

/// Serialized collision cross-check: both methods and their difference.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CollisionDoc {
    pub code: String,
    pub n_bits: usize,
    pub level_set: Vec<usize>,
    pub direct: RationalDoc,
    pub fourier: RationalDoc,
    /// Must be "0".
    pub difference: String,
    pub injective: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub syndrome_histogram: Option<std::collections::BTreeMap<String, u64>>,
}

/// Exact rational as decimal strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RationalDoc {
    pub numerator: String,
    pub denominator: String,
    pub approx: f64,
}

impl RationalDoc {
    pub fn from_rational(r: &BigRational) -> Self {
        let reduced = r.reduced();
        RationalDoc {
            numerator: reduced.numer().to_string(),
            denominator: reduced.denom().to_string(),
            approx: rational_to_f64(r),
        }
    }
}

/// Run both methods and package them for serialization.
pub fn collision_cross_check(
    code: &LinearCode,
    level_set: &[usize],
    include_histogram: bool,
    caps: &Caps,
) -> Result<CollisionDoc> {
    let direct = collision_count_direct(code, level_set, caps)?;
    let fourier = collision_count_fourier(code, level_set, caps)?;
    let difference = (&direct.coll_count - &fourier.coll_count).reduced();
    Ok(CollisionDoc {
        code: code.id(),
        n_bits: code.n_bits(),
        level_set: direct.level_set.clone(),
        direct: RationalDoc::from_rational(&direct.coll_count),
        fourier: RationalDoc::from_rational(&fourier.coll_count),
        difference: difference.to_string(),
        injective: direct.injective(),
        syndrome_histogram: if include_histogram {
            direct.syndrome_histogram.map(|h| h.into_iter().collect())
        } else {
            None
        },
    })
}
