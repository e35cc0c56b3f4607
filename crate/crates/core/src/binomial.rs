//! Exact big-integer binomial coefficients and log-domain helpers.
//!
//! Counts are always exact (`BigUint`); base-2 logarithms of those counts are
//! the only place floating point enters.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Exact binomial coefficient `C(n, k)`.
pub fn binom(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut res = BigUint::one();
    for i in 0..k {
        res = res * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    res
}

/// Row `n` of Pascal's triangle: `[C(n,0), ..., C(n,n)]`.
pub fn binom_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for k in 0..n {
        let next = &row[k] * BigUint::from(n - k) / BigUint::from(k + 1);
        row.push(next);
    }
    row
}

/// `C(n, S) = Σ_{j ∈ S} C(n, j)`, the size of the weight shell `S`.
pub fn binom_sum(n: usize, set: &[usize]) -> BigUint {
    set.iter().map(|&j| binom(n, j)).sum()
}

/// `C(n, ≤d) = Σ_{j=0}^{d} C(n, j)`.
pub fn binom_leq(n: usize, d: usize) -> BigUint {
    (0..=d.min(n)).map(|j| binom(n, j)).sum()
}

/// `C(n, ≤d)` as a `usize`, panicking on overflow (used for dimensions).
pub fn binom_leq_usize(n: usize, d: usize) -> usize {
    binom_leq(n, d)
        .to_usize()
        .expect("binomial sum exceeds usize")
}

/// Base-2 logarithm of a positive big integer, accurate to ~1e-15 relative.
pub fn log2_biguint(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "log2 of zero");
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("fits in f64").log2();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().expect("53-bit value fits in f64");
    top.log2() + shift as f64
}

/// Natural log of the gamma function for positive arguments (Lanczos, g = 7).
pub fn ln_gamma(x: f64) -> f64 {
    const COEFFS: [f64; 8] = [
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // Reflection keeps the approximation in its accurate range.
        return std::f64::consts::PI.ln()
            - (std::f64::consts::PI * x).sin().ln()
            - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut acc = 0.999_999_999_999_809_9;
    for (i, c) in COEFFS.iter().enumerate() {
        acc += c / (z + (i + 1) as f64);
    }
    let t = z + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// `log2 C(n, k)` for real `k ∈ [0, n]`, via the gamma function. Integer
/// arguments agree with the exact binomial to ~1e-12 relative.
pub fn log2_binom_real(n: f64, k: f64) -> f64 {
    assert!(n >= 0.0 && k >= 0.0 && k <= n, "binomial arguments out of range");
    if k == 0.0 || k == n {
        return 0.0;
    }
    (ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0)) / std::f64::consts::LN_2
}

/// Iterator over the size-`k` subsets of `[lo, n)` in lexicographic order of
/// their sorted position tuples: `{0,1} < {0,2} < … < {1,2} < …`.
///
/// This order, refined by weight, is the canonical candidate order of the
/// list decoder.
pub struct Combinations {
    n: usize,
    positions: Vec<usize>,
    started: bool,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations::with_lower_bound(n, k, 0)
    }

    /// Combinations drawn only from positions `lo..n`.
    pub fn with_lower_bound(n: usize, k: usize, lo: usize) -> Self {
        let done = lo + k > n;
        Combinations {
            n,
            positions: (lo..lo + k).collect(),
            started: false,
            done,
        }
    }

    /// Advance to the next combination; returns the current positions or
    /// `None` when exhausted. (Not an `Iterator` so callers can borrow the
    /// slice without allocation.)
    pub fn next_ref(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.positions);
        }
        let k = self.positions.len();
        if k == 0 {
            self.done = true;
            return None;
        }
        // Rightmost position that can still move right.
        let mut i = k;
        while i > 0 && self.positions[i - 1] == self.n - (k - (i - 1)) {
            i -= 1;
        }
        if i == 0 {
            self.done = true;
            return None;
        }
        self.positions[i - 1] += 1;
        for j in i..k {
            self.positions[j] = self.positions[j - 1] + 1;
        }
        Some(&self.positions)
    }
}

/// `log2(2^a + 2^b)` without overflow.
pub fn log2_sum_exp2(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (1.0 + (lo - hi).exp2()).log2()
}
