//! Exact Fourier coefficients of level functions and their saddle-point
//! bounds.
//!
//! For the level indicator `L_S` (strings whose weight lies in `S`) and the
//! character indexed by `1_w`, the coefficient satisfies
//! `2^{N/2} · L̂_S(1_w) = Σ_{j∈S} [z^j] (1-z)^w (1+z)^{N-w}`,
//! an integer we call the *numerator*. All identities in this module are
//! checked on those integers exactly; the saddle-point machinery only enters
//! for the log-domain upper bounds.

use crate::binomial::{binom, binom_row, binom_sum, log2_biguint};
use crate::caps::Caps;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::weights::{binary_entropy, LogProb};

/// Exact integer numerator of a level-function Fourier coefficient, with the
/// implicit scale `2^{-N/2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCoefficient {
    pub n_bits: usize,
    pub level_set: Vec<usize>,
    pub character_weight: usize,
    pub numerator: BigInt,
}

impl LevelCoefficient {
    /// `log2 |L̂_S(1_w)| = log2 |numerator| - N/2`, or `-inf` when zero.
    pub fn log2_magnitude(&self) -> f64 {
        if self.numerator.is_zero() {
            f64::NEG_INFINITY
        } else {
            log2_biguint(self.numerator.magnitude()) - self.n_bits as f64 / 2.0
        }
    }
}

fn validate_level_set(n_bits: usize, level_set: &[usize]) -> Result<Vec<usize>> {
    if level_set.is_empty() {
        return Err(Error::domain("level set must be nonempty"));
    }
    let mut sorted = level_set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if *sorted.last().unwrap() > n_bits {
        return Err(Error::domain(format!(
            "level set entry {} exceeds N = {n_bits}",
            sorted.last().unwrap()
        )));
    }
    Ok(sorted)
}

/// The coefficients `[z^j] (1-z)^w (1+z)^{N-w}` for `j = 0..=N`, by exact
/// binomial convolution: `c_j = Σ_k (-1)^k C(w,k) C(N-w, j-k)`.
pub fn character_row(n_bits: usize, character_weight: usize, caps: &Caps) -> Result<Vec<BigInt>> {
    if character_weight > n_bits {
        return Err(Error::domain(format!(
            "character weight {character_weight} exceeds N = {n_bits}"
        )));
    }
    caps.check_poly(n_bits)?;
    let w = character_weight;
    let neg_row: Vec<BigInt> = binom_row(w).into_iter().map(BigInt::from).collect();
    let pos_row: Vec<BigInt> = binom_row(n_bits - w).into_iter().map(BigInt::from).collect();
    let mut coeffs = Vec::with_capacity(n_bits + 1);
    for j in 0..=n_bits {
        let mut c = BigInt::zero();
        let k_lo = j.saturating_sub(n_bits - w);
        let k_hi = w.min(j);
        for k in k_lo..=k_hi {
            let term = &neg_row[k] * &pos_row[j - k];
            if k.is_multiple_of(2) {
                c += term;
            } else {
                c -= term;
            }
        }
        coeffs.push(c);
    }
    Ok(coeffs)
}

/// Exact numerator `2^{N/2} L̂_S(1_w)` by polynomial coefficient extraction.
pub fn level_coefficient_exact(
    n_bits: usize,
    level_set: &[usize],
    character_weight: usize,
    caps: &Caps,
) -> Result<LevelCoefficient> {
    let level_set = validate_level_set(n_bits, level_set)?;
    let row = character_row(n_bits, character_weight, caps)?;
    let numerator: BigInt = level_set.iter().map(|&j| row[j].clone()).sum();
    debug_assert!(
        numerator.magnitude() <= &binom_sum(n_bits, &level_set),
        "|numerator| cannot exceed C(N,S)"
    );
    Ok(LevelCoefficient {
        n_bits,
        level_set,
        character_weight,
        numerator,
    })
}

/// Independent oracle for [`level_coefficient_exact`]: exhaustive enumeration
/// of `Σ_{|x| ∈ S} (-1)^{⟨x, 1_w⟩}` over all `2^N` strings. Capped at N ≤ 20.
pub fn level_coefficient_bruteforce(
    n_bits: usize,
    level_set: &[usize],
    character_weight: usize,
    caps: &Caps,
) -> Result<LevelCoefficient> {
    let level_set = validate_level_set(n_bits, level_set)?;
    if character_weight > n_bits {
        return Err(Error::domain("character weight exceeds N"));
    }
    if n_bits > 20 {
        return Err(Error::CapExceeded {
            what: "full-space oracle",
            requested: n_bits as u128,
            cap: 20,
        });
    }
    caps.check_oracle(1u128 << n_bits)?;
    let in_set = {
        let mut flags = vec![false; n_bits + 1];
        for &j in &level_set {
            flags[j] = true;
        }
        flags
    };
    let mask: u32 = if character_weight == 0 {
        0
    } else {
        (1u32 << character_weight) - 1
    };
    let mut numerator = 0i64;
    for x in 0u32..(1u32 << n_bits) {
        if in_set[x.count_ones() as usize] {
            if (x & mask).count_ones().is_multiple_of(2) {
                numerator += 1;
            } else {
                numerator -= 1;
            }
        }
    }
    Ok(LevelCoefficient {
        n_bits,
        level_set,
        character_weight,
        numerator: BigInt::from(numerator),
    })
}

/// Exact Parseval identity for level functions:
/// `Σ_j C(N,j) · num(S, 1_j)² = C(N,S) · 2^N` over big integers.
pub fn parseval_identity_check(n_bits: usize, level_set: &[usize], caps: &Caps) -> Result<bool> {
    let level_set = validate_level_set(n_bits, level_set)?;
    let binoms = binom_row(n_bits);
    let mut lhs = BigUint::zero();
    for j in 0..=n_bits {
        let row = character_row(n_bits, j, caps)?;
        let num: BigInt = level_set.iter().map(|&m| row[m].clone()).sum();
        lhs += &binoms[j] * (&num * &num).magnitude();
    }
    let rhs = binom_sum(n_bits, &level_set) << n_bits;
    Ok(lhs == rhs)
}

/// The Parseval consequence `|L̂_S(1_w)| ≤ sqrt(C(N,S)/C(N,w))`, in log2.
pub fn sqrt_ratio_bound(n_bits: usize, level_set: &[usize], character_weight: usize) -> Result<LogProb> {
    let level_set = validate_level_set(n_bits, level_set)?;
    if character_weight > n_bits {
        return Err(Error::domain("character weight exceeds N"));
    }
    let num = log2_biguint(&binom_sum(n_bits, &level_set));
    let den = log2_biguint(&binom(n_bits, character_weight));
    Ok(LogProb::from_log2(0.5 * (num - den)))
}

/// Which branch of the saddle-point analysis applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SaddleRegime {
    RealSaddle,
    ComplexSaddle,
}

/// The stationary point `s` of the coefficient integral for
/// `L̂_{{εN}}(1_{δN})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SaddlePoint {
    pub epsilon: f64,
    pub delta: f64,
    pub s_re: f64,
    pub s_im: f64,
    pub regime: SaddleRegime,
}

impl SaddlePoint {
    pub fn modulus_s(&self) -> f64 {
        self.s_re.hypot(self.s_im)
    }

    pub fn modulus_one_minus_s(&self) -> f64 {
        (1.0 - self.s_re).hypot(self.s_im)
    }

    pub fn modulus_one_plus_s(&self) -> f64 {
        (1.0 + self.s_re).hypot(self.s_im)
    }
}

fn check_eps_delta(epsilon: f64, delta: f64) -> Result<()> {
    if !(0.0 < epsilon && epsilon < 0.5) {
        return Err(Error::domain(format!("epsilon {epsilon} outside (0,1/2)")));
    }
    if !(0.0 < delta && delta < 0.5) {
        return Err(Error::domain(format!("delta {delta} outside (0,1/2)")));
    }
    Ok(())
}

/// Saddle point of the contour integral. The regime is real exactly when
/// `δ < 1/2 - sqrt(ε(1-ε))`; the boundary belongs to the complex case, where
/// `|s|² = ε/(1-ε)` and `cos t = (1-2δ) / (2 sqrt(ε(1-ε)))`.
pub fn saddle_point(epsilon: f64, delta: f64) -> Result<SaddlePoint> {
    check_eps_delta(epsilon, delta)?;
    let one_minus_2d = 1.0 - 2.0 * delta;
    let disc = one_minus_2d * one_minus_2d - 4.0 * epsilon * (1.0 - epsilon);
    if delta < 0.5 - (epsilon * (1.0 - epsilon)).sqrt() {
        let s = (one_minus_2d - disc.sqrt()) / (2.0 * (1.0 - epsilon));
        Ok(SaddlePoint {
            epsilon,
            delta,
            s_re: s,
            s_im: 0.0,
            regime: SaddleRegime::RealSaddle,
        })
    } else {
        Ok(SaddlePoint {
            epsilon,
            delta,
            s_re: one_minus_2d / (2.0 * (1.0 - epsilon)),
            s_im: (-disc).max(0.0).sqrt() / (2.0 * (1.0 - epsilon)),
            regime: SaddleRegime::ComplexSaddle,
        })
    }
}

/// The implicit saddle-point bound
/// `|L̂_{{εN}}(1_{δN})| ≤ 2^{-N/2} |(1-s)^δ (1+s)^{1-δ} / s^ε|^N`, in log2.
pub fn hyper_bound_implicit(epsilon: f64, delta: f64, n_bits: usize) -> Result<LogProb> {
    let sp = saddle_point(epsilon, delta)?;
    let mod_s = sp.modulus_s();
    let mod_minus = sp.modulus_one_minus_s();
    let mod_plus = sp.modulus_one_plus_s();
    if mod_s == 0.0 || mod_minus == 0.0 {
        return Err(Error::domain("degenerate saddle point"));
    }
    let n = n_bits as f64;
    let log2 = -n / 2.0
        + n * (delta * mod_minus.log2() + (1.0 - delta) * mod_plus.log2()
            - epsilon * mod_s.log2());
    Ok(LogProb::from_log2(log2))
}

/// The closed-form bound: `2^{-N/2} ((1/2-δ) e² / ε)^{εN}` in the real
/// regime, `2^{(h(ε)-h(δ))N/2}` in the complex regime.
pub fn hyper_bound_explicit(epsilon: f64, delta: f64, n_bits: usize) -> Result<LogProb> {
    check_eps_delta(epsilon, delta)?;
    let n = n_bits as f64;
    let log2 = if delta < 0.5 - (epsilon * (1.0 - epsilon)).sqrt() {
        -n / 2.0 + epsilon * n * ((0.5 - delta) * std::f64::consts::E.powi(2) / epsilon).log2()
    } else {
        (binary_entropy(epsilon)? - binary_entropy(delta)?) * n / 2.0
    };
    Ok(LogProb::from_log2(log2))
}

/// Exact magnitude symmetries of the singleton coefficients:
/// `|num(j, w)| = |num(j, N-w)|` and `|num(j, w)| = |num(N-j, w)|`.
pub fn symmetry_check(n_bits: usize, j: usize, w: usize, caps: &Caps) -> Result<bool> {
    if j > n_bits || w > n_bits {
        return Err(Error::domain("indices exceed N"));
    }
    let at = |jj: usize, ww: usize| -> Result<BigInt> {
        Ok(character_row(n_bits, ww, caps)?[jj].clone())
    };
    let base = at(j, w)?.abs();
    Ok(base == at(j, n_bits - w)?.abs() && base == at(n_bits - j, w)?.abs())
}
