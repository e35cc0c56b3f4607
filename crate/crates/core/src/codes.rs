//! Construction of binary linear code families: Reed-Muller, repetition,
//! random, and explicit codes, plus duals and transitivity checks.
//!
//! Conventions pinned here so that serialized matrices are reproducible:
//!
//! * Columns of a Reed-Muller generator are indexed by the points of `F_2^n`
//!   in lexicographic order with coordinate 1 as the most significant bit,
//!   i.e. column `c` is the point `x` with `x_j = bit (n - j) of c`.
//! * Rows are indexed by monomial sets of size at most `d`, ordered by degree
//!   and lexicographically within each degree: `∅; {1},…,{n}; {1,2},…`.
//! * A repetition codeword stores copy `k` of message bit `i` at coordinate
//!   `k · block_dim + i` (block-concatenated copies).

use crate::binomial::binom_leq_usize;
use crate::error::{Error, Result};
use crate::gf2::{BitVector, Gf2Matrix, Permutation};
use crate::rng::SplitMix64;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest supported `n` for Reed-Muller construction (block length `2^n`).
const MAX_RM_VARS: usize = 24;

/// How a code was constructed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeFamily {
    ReedMuller { n: usize, d: usize },
    Repetition { block_dim: usize, copies: usize },
    Random { seed: u64 },
    Explicit,
}

impl fmt::Display for CodeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeFamily::ReedMuller { n, d } => write!(f, "reed_muller({n},{d})"),
            CodeFamily::Repetition { block_dim, copies } => {
                write!(f, "repetition({block_dim},{copies})")
            }
            CodeFamily::Random { seed } => write!(f, "random(seed={seed})"),
            CodeFamily::Explicit => write!(f, "explicit"),
        }
    }
}

impl CodeFamily {
    fn parse(s: &str) -> CodeFamily {
        let parse_two = |body: &str| -> Option<(usize, usize)> {
            let (a, b) = body.split_once(',')?;
            Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
        };
        if let Some(body) = s.strip_prefix("reed_muller(").and_then(|r| r.strip_suffix(')')) {
            if let Some((n, d)) = parse_two(body) {
                return CodeFamily::ReedMuller { n, d };
            }
        }
        if let Some(body) = s.strip_prefix("repetition(").and_then(|r| r.strip_suffix(')')) {
            if let Some((b, c)) = parse_two(body) {
                return CodeFamily::Repetition { block_dim: b, copies: c };
            }
        }
        if let Some(body) = s.strip_prefix("random(seed=").and_then(|r| r.strip_suffix(')')) {
            if let Ok(seed) = body.trim().parse() {
                return CodeFamily::Random { seed };
            }
        }
        CodeFamily::Explicit
    }
}

/// A binary linear code with both generator and parity-check matrices.
#[derive(Debug, Clone)]
pub struct LinearCode {
    family: CodeFamily,
    n_bits: usize,
    dimension: usize,
    generator: Gf2Matrix,
    parity_check: Gf2Matrix,
}

/// JSON document form of a code.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeDocument {
    pub family: String,
    pub n_bits: usize,
    pub dimension: usize,
    pub generator_hex_rows: Vec<String>,
    pub parity_hex_rows: Vec<String>,
}

impl LinearCode {
    /// Build a code from explicit matrices, validating the invariants:
    /// full-rank generator and parity check, and `G · Hᵀ = 0`.
    pub fn new(
        family: CodeFamily,
        generator: Gf2Matrix,
        parity_check: Gf2Matrix,
    ) -> Result<LinearCode> {
        let n_bits = generator.n_cols();
        let dimension = generator.n_rows();
        if parity_check.n_cols() != n_bits {
            return Err(Error::DimensionMismatch {
                context: "parity-check width",
                expected: n_bits,
                got: parity_check.n_cols(),
            });
        }
        if parity_check.n_rows() != n_bits - dimension {
            return Err(Error::DimensionMismatch {
                context: "parity-check height",
                expected: n_bits - dimension,
                got: parity_check.n_rows(),
            });
        }
        if generator.rank() != dimension {
            return Err(Error::InvalidInput("generator is not full rank".into()));
        }
        if parity_check.rank() != n_bits - dimension {
            return Err(Error::InvalidInput("parity check is not full rank".into()));
        }
        if !generator.mul_transpose(&parity_check)?.is_zero() {
            return Err(Error::InvalidInput(
                "generator and parity check are not orthogonal".into(),
            ));
        }
        Ok(LinearCode {
            family,
            n_bits,
            dimension,
            generator,
            parity_check,
        })
    }

    pub fn family(&self) -> &CodeFamily {
        &self.family
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// `t = N - dim C`, the syndrome length.
    pub fn redundancy(&self) -> usize {
        self.n_bits - self.dimension
    }

    /// Rate `η = dim C / N`.
    pub fn rate(&self) -> f64 {
        self.dimension as f64 / self.n_bits as f64
    }

    pub fn generator(&self) -> &Gf2Matrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &Gf2Matrix {
        &self.parity_check
    }

    /// Identifier used in reports.
    pub fn id(&self) -> String {
        self.family.to_string()
    }

    /// Membership test via the parity check.
    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        Ok(self.parity_check.syndrome(v)?.is_zero())
    }

    /// True when the code equals its own dual.
    pub fn is_self_dual(&self) -> bool {
        self.dimension * 2 == self.n_bits
            && self
                .generator
                .same_row_space(&self.parity_check)
                .unwrap_or(false)
    }

    /// Encode a message given as the low `dim` bits of `msg`.
    pub fn encode_bits(&self, msg: u64) -> BitVector {
        assert!(self.dimension <= 64, "encode_bits supports dim <= 64");
        let mut word = BitVector::zero(self.n_bits);
        for i in 0..self.dimension {
            if (msg >> i) & 1 == 1 {
                word.xor_assign(self.generator.row(i));
            }
        }
        word
    }

    pub fn to_document(&self) -> CodeDocument {
        CodeDocument {
            family: self.family.to_string(),
            n_bits: self.n_bits,
            dimension: self.dimension,
            generator_hex_rows: self.generator.to_hex_rows(),
            parity_hex_rows: self.parity_check.to_hex_rows(),
        }
    }

    pub fn from_document(doc: &CodeDocument) -> Result<LinearCode> {
        let generator = Gf2Matrix::from_hex_rows(&doc.generator_hex_rows, doc.n_bits)?;
        let parity = Gf2Matrix::from_hex_rows(&doc.parity_hex_rows, doc.n_bits)?;
        let code = LinearCode::new(CodeFamily::parse(&doc.family), generator, parity)?;
        if code.dimension != doc.dimension {
            return Err(Error::InvalidInput(format!(
                "document says dimension {}, matrices give {}",
                doc.dimension, code.dimension
            )));
        }
        Ok(code)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("serializable")
    }

    pub fn from_json(json: &str) -> Result<LinearCode> {
        let doc: CodeDocument = serde_json::from_str(json)
            .map_err(|e| Error::InvalidInput(format!("bad code document: {e}")))?;
        LinearCode::from_document(&doc)
    }
}

/// Index of the point `x ∈ F_2^n` under the lexicographic column order.
fn point_of_column(c: usize, n: usize) -> Vec<u8> {
    (1..=n).map(|j| ((c >> (n - j)) & 1) as u8).collect()
}

/// Monomial sets of size ≤ d, ordered by degree then lexicographically.
/// Sets use 1-based variable indices to match the `x_1, …, x_n` notation.
fn monomials_up_to(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for size in 1..=d {
        let mut combo: Vec<usize> = (1..=size).collect();
        if size > n {
            break;
        }
        loop {
            out.push(combo.clone());
            // Advance to the next size-`size` combination in lex order.
            let mut i = size;
            while i > 0 && combo[i - 1] == n - (size - i) {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for j in i..size {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    out
}

/// Generator matrix of `RM(n, d)`: one row per monomial, one column per point.
fn rm_generator(n: usize, d: usize) -> Gf2Matrix {
    let n_points = 1usize << n;
    let monomials = monomials_up_to(n, d);
    let mut rows = Vec::with_capacity(monomials.len());
    for mono in &monomials {
        let mut row = BitVector::zero(n_points);
        'col: for c in 0..n_points {
            for &j in mono {
                if (c >> (n - j)) & 1 == 0 {
                    continue 'col;
                }
            }
            row.set(c, true);
        }
        rows.push(row);
    }
    Gf2Matrix::from_rows(rows, n_points).expect("consistent widths")
}

/// The Reed-Muller code `RM(n, d)`.
///
/// The parity check is the generator of `RM(n, n-d-1)`, which spans the
/// dual; `RM(n, n)` is the full space and gets the empty parity check.
pub fn rm_code(n: usize, d: usize) -> Result<LinearCode> {
    if n == 0 || d > n {
        return Err(Error::domain(format!(
            "rm_code requires 0 <= d <= n with n >= 1, got n={n}, d={d}"
        )));
    }
    if n > MAX_RM_VARS {
        return Err(Error::CapExceeded {
            what: "Reed-Muller block length",
            requested: n as u128,
            cap: MAX_RM_VARS as u128,
        });
    }
    let generator = rm_generator(n, d);
    let parity = if d == n {
        Gf2Matrix::empty(1 << n)
    } else {
        rm_generator(n, n - d - 1)
    };
    debug_assert_eq!(generator.n_rows(), binom_leq_usize(n, d));
    LinearCode::new(CodeFamily::ReedMuller { n, d }, generator, parity)
}

/// The `copies`-fold repetition code over blocks of `block_dim` bits.
///
/// Codewords are `copies` concatenated copies of a message `z`, so every
/// codeword weight is a multiple of `copies`.
pub fn repetition_code(block_dim: usize, copies: usize) -> Result<LinearCode> {
    if block_dim == 0 {
        return Err(Error::domain("repetition block_dim must be >= 1"));
    }
    if copies < 2 {
        return Err(Error::domain("repetition code needs copies >= 2"));
    }
    let n = block_dim * copies;
    if n > 1 << 24 {
        return Err(Error::CapExceeded {
            what: "repetition block length",
            requested: n as u128,
            cap: 1 << 24,
        });
    }
    let mut gen_rows = Vec::with_capacity(block_dim);
    for i in 0..block_dim {
        let support: Vec<usize> = (0..copies).map(|k| k * block_dim + i).collect();
        gen_rows.push(BitVector::from_support(n, &support));
    }
    // Parity rows pair coordinate i of copy 0 with coordinate i of copy k.
    let mut parity_rows = Vec::with_capacity(n - block_dim);
    for k in 1..copies {
        for i in 0..block_dim {
            parity_rows.push(BitVector::from_support(n, &[i, k * block_dim + i]));
        }
    }
    LinearCode::new(
        CodeFamily::Repetition { block_dim, copies },
        Gf2Matrix::from_rows(gen_rows, n)?,
        Gf2Matrix::from_rows(parity_rows, n)?,
    )
}

/// The dual code: generator and parity check swapped.
pub fn dual_code(code: &LinearCode) -> LinearCode {
    let family = match code.family {
        CodeFamily::ReedMuller { n, d } if d < n => {
            CodeFamily::ReedMuller { n, d: n - d - 1 }
        }
        _ => CodeFamily::Explicit,
    };
    LinearCode {
        family,
        n_bits: code.n_bits,
        dimension: code.n_bits - code.dimension,
        generator: code.parity_check.clone(),
        parity_check: code.generator.clone(),
    }
}

/// A random linear code with a full-rank generator, deterministic in `seed`.
pub fn random_linear_code(n_bits: usize, dimension: usize, seed: u64) -> Result<LinearCode> {
    if n_bits == 0 || dimension == 0 || dimension > n_bits {
        return Err(Error::domain(format!(
            "random code needs 1 <= dimension <= n_bits, got {dimension} / {n_bits}"
        )));
    }
    let mut rng = SplitMix64::for_counter(seed, 0);
    loop {
        let rows: Vec<BitVector> = (0..dimension)
            .map(|_| {
                let mut row = BitVector::zero(n_bits);
                for i in 0..n_bits {
                    row.set(i, rng.next_bool(0.5));
                }
                row
            })
            .collect();
        let generator = Gf2Matrix::from_rows(rows, n_bits)?;
        if generator.rank() < dimension {
            continue; // resample until full rank
        }
        let parity = generator.nullspace_basis();
        return LinearCode::new(CodeFamily::Random { seed }, generator, parity);
    }
}

/// True when permuting the coordinates of every codeword lands in the code.
pub fn is_closed_under(code: &LinearCode, p: &Permutation) -> Result<bool> {
    if p.len() != code.n_bits {
        return Err(Error::DimensionMismatch {
            context: "permutation length",
            expected: code.n_bits,
            got: p.len(),
        });
    }
    let permuted_rows: Result<Vec<BitVector>> =
        code.generator.rows().iter().map(|r| p.apply(r)).collect();
    let permuted = Gf2Matrix::from_rows(permuted_rows?, code.n_bits)?;
    let stacked = code.generator.stack(&permuted)?;
    Ok(stacked.rank() == code.dimension)
}

/// The `2^n` translation permutations `x ↦ x + v` on the points of `F_2^n`.
///
/// These witness transitivity of every `RM(n, d)`: for any coordinate pair
/// `(i, j)` the translation by `v = x_i + x_j` maps `i` to `j`.
pub fn transitivity_witnesses_rm(n: usize) -> Result<Vec<Permutation>> {
    if n == 0 || n > MAX_RM_VARS {
        return Err(Error::domain(format!("unsupported variable count {n}")));
    }
    let size = 1usize << n;
    Ok((0..size)
        .map(|v| {
            Permutation::from_mapping((0..size).map(|i| i ^ v).collect())
                .expect("xor is a bijection")
        })
        .collect())
}

/// Checks linear independence of the RM generator columns at points of
/// weight ≤ d.
pub fn check_low_weight_columns_independent(n: usize, d: usize) -> Result<bool> {
    if d >= n {
        return Err(Error::domain("requires d < n"));
    }
    let generator = rm_generator(n, d);
    let dim = generator.n_rows();
    let low_cols: Vec<usize> = (0..1usize << n)
        .filter(|&c| point_of_column(c, n).iter().map(|&b| b as usize).sum::<usize>() <= d)
        .collect();
    debug_assert_eq!(low_cols.len(), dim);
    let mut rows = Vec::with_capacity(dim);
    for r in 0..dim {
        let mut row = BitVector::zero(low_cols.len());
        for (idx, &c) in low_cols.iter().enumerate() {
            if generator.get(r, c) {
                row.set(idx, true);
            }
        }
        rows.push(row);
    }
    let submatrix = Gf2Matrix::from_rows(rows, low_cols.len())?;
    Ok(submatrix.rank() == dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rm_1_1_generator_rows() {
        let code = rm_code(1, 1).unwrap();
        assert_eq!(code.generator().row(0).to_string(), "11");
        assert_eq!(code.generator().row(1).to_string(), "01");
    }

    #[test]
    fn rm_2_1_generator_rows() {
        let code = rm_code(2, 1).unwrap();
        assert_eq!(code.n_bits(), 4);
        assert_eq!(code.dimension(), 3);
        let rows: Vec<String> = (0..3).map(|i| code.generator().row(i).to_string()).collect();
        assert_eq!(rows, vec!["1111", "0011", "0101"]);
    }

    #[test]
    fn rm_3_1_is_self_dual() {
        let code = rm_code(3, 1).unwrap();
        assert_eq!(code.dimension(), 4);
        assert!(code
            .parity_check()
            .same_row_space(code.generator())
            .unwrap());
        assert!(code.is_self_dual());
        // The nullspace of the generator spans the same 4-dimensional space.
        let basis = code.generator().nullspace_basis();
        assert_eq!(basis.n_rows(), 4);
        assert!(basis.same_row_space(code.generator()).unwrap());
    }

    #[test]
    fn rm_dimensions_match_binomial_sums() {
        for n in 1..=5 {
            for d in 0..n {
                let code = rm_code(n, d).unwrap();
                assert_eq!(code.dimension(), binom_leq_usize(n, d), "RM({n},{d})");
                assert!(code
                    .generator()
                    .mul_transpose(code.parity_check())
                    .unwrap()
                    .is_zero());
            }
        }
    }

    #[test]
    fn rm_rejects_bad_parameters() {
        assert!(rm_code(3, 4).is_err());
        assert!(rm_code(0, 0).is_err());
    }

    #[test]
    fn rm_with_d_equal_n_is_the_full_space() {
        let code = rm_code(2, 2).unwrap();
        assert_eq!(code.dimension(), 4);
        assert_eq!(code.parity_check().n_rows(), 0);
        for v in 0u64..16 {
            let mut word = BitVector::zero(4);
            for i in 0..4 {
                word.set(i, (v >> i) & 1 == 1);
            }
            assert!(code.contains(&word).unwrap());
        }
    }

    #[test]
    fn repetition_smallest() {
        let code = repetition_code(1, 3).unwrap();
        assert_eq!(code.n_bits(), 3);
        assert_eq!(code.dimension(), 1);
        assert_eq!(code.generator().row(0).to_string(), "111");
    }

    #[test]
    fn repetition_2x2_codewords() {
        let code = repetition_code(2, 2).unwrap();
        let mut words: Vec<String> = (0..4u64)
            .map(|m| code.encode_bits(m).to_string())
            .collect();
        words.sort();
        // Block-concatenated layout: copies of z = (z0, z1) side by side.
        assert_eq!(words, vec!["0000", "0101", "1010", "1111"]);
        let weights: Vec<usize> = (0..4u64)
            .map(|m| code.encode_bits(m).weight())
            .collect();
        let mut hist = [0usize; 5];
        for w in weights {
            hist[w] += 1;
        }
        assert_eq!(hist, [1, 0, 2, 0, 1]);
    }

    #[test]
    fn repetition_rejects_single_copy() {
        assert!(repetition_code(4, 1).is_err());
    }

    #[test]
    fn dual_of_dual_restores_row_spaces() {
        let code = rm_code(3, 2).unwrap();
        let back = dual_code(&dual_code(&code));
        assert!(back.generator().same_row_space(code.generator()).unwrap());
        assert!(back
            .parity_check()
            .same_row_space(code.parity_check())
            .unwrap());
    }

    #[test]
    fn dual_of_rm_3_1_is_itself() {
        let code = rm_code(3, 1).unwrap();
        let dual = dual_code(&code);
        assert_eq!(dual.family(), &CodeFamily::ReedMuller { n: 3, d: 1 });
        assert!(dual.generator().same_row_space(code.generator()).unwrap());
    }

    #[test]
    fn dual_of_repetition_1_3() {
        let code = repetition_code(1, 3).unwrap();
        let dual = dual_code(&code);
        assert_eq!(dual.dimension(), 2);
        for w in ["000", "110", "101", "011"] {
            let v = BitVector::from_bit_str(w).unwrap();
            assert!(dual.contains(&v).unwrap(), "{w} should be in the dual");
        }
        assert!(!dual.contains(&BitVector::from_bit_str("100").unwrap()).unwrap());
    }

    #[test]
    fn random_code_is_deterministic_and_full_rank() {
        let a = random_linear_code(8, 4, 1).unwrap();
        let b = random_linear_code(8, 4, 1).unwrap();
        assert_eq!(a.generator().to_hex_rows(), b.generator().to_hex_rows());
        assert_eq!(a.generator().rank(), 4);
        assert_eq!(a.parity_check().rank(), 4);
    }

    #[test]
    fn random_full_space_code() {
        let code = random_linear_code(6, 6, 3).unwrap();
        assert_eq!(code.redundancy(), 0);
        assert_eq!(code.parity_check().n_rows(), 0);
        // Every vector is a codeword: the syndrome is trivially empty.
        assert!(code.contains(&BitVector::from_bit_str("101010").unwrap()).unwrap());
    }

    #[test]
    fn closure_under_identity_and_transpositions() {
        let code = random_linear_code(8, 4, 5).unwrap();
        assert!(is_closed_under(&code, &Permutation::identity(8)).unwrap());
        // Compare the rank-based check against explicit membership testing
        // for every adjacent transposition.
        for t in 0..7 {
            let mut mapping: Vec<usize> = (0..8).collect();
            mapping.swap(t, t + 1);
            let p = Permutation::from_mapping(mapping).unwrap();
            let closed = is_closed_under(&code, &p).unwrap();
            let manual = code
                .generator()
                .rows()
                .iter()
                .all(|r| code.contains(&p.apply(r).unwrap()).unwrap());
            assert_eq!(closed, manual, "transposition ({t},{})", t + 1);
        }
    }

    #[test]
    fn rm_closed_under_translations() {
        let code = rm_code(3, 2).unwrap();
        for p in transitivity_witnesses_rm(3).unwrap() {
            assert!(is_closed_under(&code, &p).unwrap());
        }
    }

    #[test]
    fn translation_witness_counts_and_coverage() {
        let w1 = transitivity_witnesses_rm(1).unwrap();
        assert_eq!(w1.len(), 2);
        assert_eq!(w1[0], Permutation::identity(2));
        assert_eq!(w1[1], Permutation::from_mapping(vec![1, 0]).unwrap());

        let w2 = transitivity_witnesses_rm(2).unwrap();
        assert_eq!(w2.len(), 4);
        for p in &w2[1..] {
            for i in 0..4 {
                assert_ne!(p.map(i), i, "translations other than 0 are fixed-point-free");
            }
        }

        let w3 = transitivity_witnesses_rm(3).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                assert!(
                    w3.iter().any(|p| p.map(i) == j),
                    "no witness sends {i} to {j}"
                );
            }
        }
    }

    #[test]
    fn dual_transitivity_witnesses() {
        // Claim: if C is closed under π then C⊥ is closed under π⁻¹.
        for (n, d) in [(3, 1), (3, 2), (4, 2)] {
            let dual = dual_code(&rm_code(n, d).unwrap());
            for p in transitivity_witnesses_rm(n).unwrap() {
                assert!(is_closed_under(&dual, &p.inverse()).unwrap());
            }
        }
    }

    #[test]
    fn low_weight_columns_are_independent() {
        for (n, d) in [(3, 1), (4, 2), (5, 3)] {
            assert!(check_low_weight_columns_independent(n, d).unwrap());
        }
    }

    #[test]
    fn json_round_trip() {
        let code = rm_code(3, 1).unwrap();
        let json = code.to_json();
        let back = LinearCode::from_json(&json).unwrap();
        assert_eq!(back.family(), code.family());
        assert_eq!(back.generator().to_hex_rows(), code.generator().to_hex_rows());
    }

    #[test]
    fn document_rejects_inconsistent_dimension() {
        let code = rm_code(2, 1).unwrap();
        let mut doc = code.to_document();
        doc.dimension = 2;
        assert!(LinearCode::from_document(&doc).is_err());
    }
}
