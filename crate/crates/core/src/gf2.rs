//! Bit-packed linear algebra over GF(2).
//!
//! Vectors and matrices are immutable in spirit: every operation returns a
//! fresh value, so all types here are freely shareable across threads.
//!
//! The canonical serialization of a length-`N` vector is a lowercase hex
//! string of `ceil(N/8)` bytes, little-endian in bit index: bit `i` lives in
//! byte `i / 8` at position `i % 8`, and bits beyond `N` are zero.

use crate::error::{Error, Result};
use std::fmt;

const WORD_BITS: usize = 64;

/// A length-`N` word over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    /// The all-zero vector of the given length.
    pub fn zero(len: usize) -> Self {
        assert!(len >= 1, "BitVector length must be at least 1");
        BitVector {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    /// The all-one vector of the given length.
    pub fn ones(len: usize) -> Self {
        let mut v = BitVector::zero(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    /// Build from a slice of bits, index 0 first.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = BitVector::zero(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    /// Parse a string of `0`/`1` characters, index 0 first.
    pub fn from_bit_str(s: &str) -> Result<Self> {
        if s.is_empty() || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::InvalidInput(format!("not a bit string: {s:?}")));
        }
        let bits: Vec<u8> = s.bytes().map(|b| b - b'0').collect();
        Ok(BitVector::from_bits(&bits))
    }

    /// Vector with ones exactly at `support`.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = BitVector::zero(len);
        for &i in support {
            assert!(i < len, "support index {i} out of range for length {len}");
            v.set(i, true);
        }
        v
    }

    /// The vector `1_w`: ones in the first `w` coordinates.
    pub fn prefix_ones(len: usize, w: usize) -> Self {
        assert!(w <= len);
        let mut v = BitVector::zero(len);
        for i in 0..w {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false // length is always >= 1
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    /// Hamming weight: the number of set bits.
    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// In-place XOR with another vector of the same length.
    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> Result<BitVector> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                context: "xor of bit vectors",
                expected: self.len,
                got: other.len,
            });
        }
        let mut out = self.clone();
        out.xor_assign(other);
        Ok(out)
    }

    /// Inner product over GF(2).
    #[inline]
    pub fn dot(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of the set bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    pub fn clear(&mut self) {
        for w in &mut self.words {
            *w = 0;
        }
    }

    /// Canonical byte serialization: bit `i` in byte `i/8`, position `i%8`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut bytes = vec![0u8; self.len.div_ceil(8)];
        for i in 0..self.len {
            if self.get(i) {
                bytes[i / 8] |= 1 << (i % 8);
            }
        }
        bytes
    }

    /// Canonical lowercase hex string of [`Self::to_bytes`].
    pub fn to_hex(&self) -> String {
        self.to_bytes()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// Parse the canonical hex serialization. Bits beyond `len` must be zero.
    pub fn from_hex(hex: &str, len: usize) -> Result<Self> {
        let expected = len.div_ceil(8);
        if hex.len() != 2 * expected {
            return Err(Error::InvalidInput(format!(
                "hex string {hex:?} has {} bytes, expected {expected} for length {len}",
                hex.len() / 2
            )));
        }
        let mut v = BitVector::zero(len);
        for k in 0..expected {
            let byte = u8::from_str_radix(&hex[2 * k..2 * k + 2], 16)
                .map_err(|_| Error::InvalidInput(format!("bad hex byte in {hex:?}")))?;
            for i in 0..8 {
                let idx = 8 * k + i;
                let bit = (byte >> i) & 1 == 1;
                if idx < len {
                    v.set(idx, bit);
                } else if bit {
                    return Err(Error::InvalidInput(format!(
                        "nonzero padding bit {idx} in hex of length-{len} vector"
                    )));
                }
            }
        }
        Ok(v)
    }

}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// A row-major bit-packed matrix over GF(2).
///
/// Zero-row matrices are allowed: they arise naturally as the nullspace basis
/// of a full-column-rank matrix and as the parity check of the full space.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: Vec<BitVector>,
    cols: usize,
}

impl Gf2Matrix {
    pub fn from_rows(rows: Vec<BitVector>, cols: usize) -> Result<Self> {
        assert!(cols >= 1, "Gf2Matrix must have at least one column");
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "matrix row width",
                    expected: cols,
                    got: r.len(),
                });
            }
        }
        Ok(Gf2Matrix { rows, cols })
    }

    pub fn from_bit_rows(rows: &[&str]) -> Result<Self> {
        let parsed: Result<Vec<BitVector>> =
            rows.iter().map(|s| BitVector::from_bit_str(s)).collect();
        let parsed = parsed?;
        let cols = parsed.first().map(|r| r.len()).ok_or_else(|| {
            Error::InvalidInput("cannot infer width of an empty matrix".into())
        })?;
        Gf2Matrix::from_rows(parsed, cols)
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows: (0..rows).map(|_| BitVector::zero(cols)).collect(),
            cols,
        }
    }

    /// The explicitly empty matrix with no rows.
    pub fn empty(cols: usize) -> Self {
        assert!(cols >= 1);
        Gf2Matrix { rows: Vec::new(), cols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Gf2Matrix::zero(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    /// Column `c` as a bit vector of length `n_rows`. Zero-row matrices give
    /// a length-1 zero vector placeholder; callers must not ask for columns
    /// of empty matrices in contexts where the height matters.
    pub fn column(&self, c: usize) -> BitVector {
        assert!(c < self.cols);
        let height = self.rows.len().max(1);
        let mut col = BitVector::zero(height);
        for (r, row) in self.rows.iter().enumerate() {
            if row.get(c) {
                col.set(r, true);
            }
        }
        col
    }

    /// Stack the rows of two matrices with equal width.
    pub fn stack(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "stacking matrices",
                expected: self.cols,
                got: other.cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Gf2Matrix::from_rows(rows, self.cols)
    }

    /// Rank over GF(2) by row reduction.
    pub fn rank(&self) -> usize {
        self.clone().reduce().1.len()
    }

    /// Reduced row echelon form with deterministic pivoting: pivots are taken
    /// in increasing column order, choosing the lowest-index remaining row.
    /// Returns `(rref, pivot_columns)`.
    pub fn rref(&self) -> (Gf2Matrix, Vec<usize>) {
        self.clone().reduce()
    }

    fn reduce(mut self) -> (Gf2Matrix, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            if next_row >= self.rows.len() {
                break;
            }
            let pivot = (next_row..self.rows.len()).find(|&r| self.rows[r].get(col));
            let Some(pivot) = pivot else { continue };
            self.rows.swap(next_row, pivot);
            let pivot_row = self.rows[next_row].clone();
            for (r, row) in self.rows.iter_mut().enumerate() {
                if r != next_row && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        (self, pivots)
    }

    /// A basis for `{x : self · xᵀ = 0}`, one row per basis vector.
    ///
    /// The basis is canonical: the `rref` free columns in increasing order
    /// each contribute one vector. When the matrix has full column rank the
    /// returned matrix has zero rows (the explicit empty basis).
    pub fn nullspace_basis(&self) -> Gf2Matrix {
        let (rref, pivots) = self.rref();
        let is_pivot = {
            let mut flags = vec![false; self.cols];
            for &c in &pivots {
                flags[c] = true;
            }
            flags
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = BitVector::zero(self.cols);
            v.set(free, true);
            for (r, &pc) in pivots.iter().enumerate() {
                if rref.rows[r].get(free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        Gf2Matrix { rows: basis, cols: self.cols }
    }

    /// The syndrome `self · zᵀ`: bit `i` is `⟨row_i, z⟩`.
    ///
    /// A zero-row matrix has the empty syndrome, which we represent as a
    /// length-1 zero vector so that all syndromes remain valid `BitVector`s.
    pub fn syndrome(&self, z: &BitVector) -> Result<BitVector> {
        if z.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "syndrome input length",
                expected: self.cols,
                got: z.len(),
            });
        }
        if self.rows.is_empty() {
            return Ok(BitVector::zero(1));
        }
        let mut out = BitVector::zero(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(z) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// `self · otherᵀ`.
    pub fn mul_transpose(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix product inner dimension",
                expected: self.cols,
                got: other.cols,
            });
        }
        let mut out = Gf2Matrix::zero(self.rows.len(), other.rows.len().max(1));
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in other.rows.iter().enumerate() {
                if a.dot(b) {
                    out.set(i, j, true);
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    /// True when `v` lies in the row space.
    pub fn row_space_contains(&self, v: &BitVector) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "row-space membership",
                expected: self.cols,
                got: v.len(),
            });
        }
        let base = self.rank();
        let mut rows = self.rows.clone();
        rows.push(v.clone());
        let stacked = Gf2Matrix { rows, cols: self.cols };
        Ok(stacked.rank() == base)
    }

    /// True when both matrices span the same row space.
    pub fn same_row_space(&self, other: &Gf2Matrix) -> Result<bool> {
        let stacked = self.stack(other)?;
        let r = stacked.rank();
        Ok(r == self.rank() && r == other.rank())
    }

    pub fn to_hex_rows(&self) -> Vec<String> {
        self.rows.iter().map(|r| r.to_hex()).collect()
    }

    pub fn from_hex_rows(rows: &[String], cols: usize) -> Result<Self> {
        let parsed: Result<Vec<BitVector>> = rows
            .iter()
            .map(|h| BitVector::from_hex(h, cols))
            .collect();
        Gf2Matrix::from_rows(parsed?, cols)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{} [", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

/// A permutation of `[N]`, stored as its mapping `i -> mapping[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { mapping: (0..n).collect() }
    }

    /// Validates that `mapping` is a bijection on `[N]`.
    pub fn from_mapping(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &m in &mapping {
            if m >= n || seen[m] {
                return Err(Error::InvalidInput(format!(
                    "mapping is not a bijection on [{n}]"
                )));
            }
            seen[m] = true;
        }
        Ok(Permutation { mapping })
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn map(&self, i: usize) -> usize {
        self.mapping[i]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.mapping.len()];
        for (i, &m) in self.mapping.iter().enumerate() {
            inv[m] = i;
        }
        Permutation { mapping: inv }
    }

    /// Apply to a vector: `result[i] = v[mapping[i]]`.
    pub fn apply(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.mapping.len() {
            return Err(Error::DimensionMismatch {
                context: "permutation length",
                expected: self.mapping.len(),
                got: v.len(),
            });
        }
        let mut out = BitVector::zero(v.len());
        for (i, &m) in self.mapping.iter().enumerate() {
            if v.get(m) {
                out.set(i, true);
            }
        }
        Ok(out)
    }
}

/// Convenience free functions mirroring the mathematical notation.
pub fn weight(v: &BitVector) -> usize {
    v.weight()
}

pub fn rank(m: &Gf2Matrix) -> usize {
    m.rank()
}

pub fn nullspace_basis(m: &Gf2Matrix) -> Gf2Matrix {
    m.nullspace_basis()
}

pub fn syndrome(h: &Gf2Matrix, z: &BitVector) -> Result<BitVector> {
    h.syndrome(z)
}

pub fn permute(v: &BitVector, p: &Permutation) -> Result<BitVector> {
    p.apply(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn weight_of_zero_and_ones() {
        assert_eq!(BitVector::zero(8).weight(), 0);
        assert_eq!(BitVector::ones(8).weight(), 8);
    }

    #[test]
    fn weight_counts_bits() {
        let v = BitVector::from_bit_str("10110000").unwrap();
        assert_eq!(v.weight(), 3);
    }

    #[test]
    fn rank_of_identity() {
        assert_eq!(Gf2Matrix::identity(4).rank(), 4);
    }

    #[test]
    fn rank_of_duplicate_rows() {
        let m = Gf2Matrix::from_bit_rows(&["1010", "1010"]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rank_of_rm_3_1_generator() {
        // Rows: constant 1, x1, x2, x3 evaluated on lexicographic points.
        let m = Gf2Matrix::from_bit_rows(&[
            "11111111", "00001111", "00110011", "01010101",
        ])
        .unwrap();
        assert_eq!(m.rank(), 4);
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        let basis = Gf2Matrix::identity(3).nullspace_basis();
        assert_eq!(basis.n_rows(), 0);
        assert_eq!(basis.n_cols(), 3);
    }

    #[test]
    fn nullspace_of_all_ones_row() {
        let m = Gf2Matrix::from_bit_rows(&["111"]).unwrap();
        let basis = m.nullspace_basis();
        assert_eq!(basis.n_rows(), 2);
        assert_eq!(basis.row(0).to_string(), "110");
        assert_eq!(basis.row(1).to_string(), "101");
        // Cross-check against enumeration of all 8 vectors.
        let mut kernel = Vec::new();
        for bits in 0u8..8 {
            let v = BitVector::from_bits(&[bits & 1, (bits >> 1) & 1, (bits >> 2) & 1]);
            if !m.syndrome(&v).unwrap().get(0) {
                kernel.push(v);
            }
        }
        assert_eq!(kernel.len(), 4); // 2^2 including zero
        for v in kernel {
            assert!(basis.row_space_contains(&v).unwrap());
        }
    }

    #[test]
    fn syndrome_examples() {
        let h = Gf2Matrix::from_bit_rows(&["110", "101"]).unwrap();
        let z = BitVector::from_bit_str("100").unwrap();
        assert_eq!(h.syndrome(&z).unwrap().to_string(), "11");
        let z2 = BitVector::from_bit_str("011").unwrap();
        assert_eq!(h.syndrome(&z2).unwrap().to_string(), "11");
        let zero = BitVector::zero(3);
        assert!(h.syndrome(&zero).unwrap().is_zero());
    }

    #[test]
    fn syndrome_dimension_mismatch() {
        let h = Gf2Matrix::from_bit_rows(&["110", "101"]).unwrap();
        let z = BitVector::zero(4);
        assert!(h.syndrome(&z).is_err());
    }

    #[test]
    fn permute_identity_and_reversal() {
        let v = BitVector::from_bit_str("100").unwrap();
        let id = Permutation::identity(3);
        assert_eq!(id.apply(&v).unwrap(), v);
        let rev = Permutation::from_mapping(vec![2, 1, 0]).unwrap();
        assert_eq!(rev.apply(&v).unwrap().to_string(), "001");
    }

    #[test]
    fn permutation_rejects_non_bijections() {
        assert!(Permutation::from_mapping(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_mapping(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn hex_round_trip_and_padding_checks() {
        let v = BitVector::from_bit_str("10110000").unwrap();
        assert_eq!(v.to_hex(), "0d");
        assert_eq!(BitVector::from_hex("0d", 8).unwrap(), v);
        // A set bit beyond the length is rejected.
        assert!(BitVector::from_hex("ff", 4).is_err());
        let w = BitVector::from_bit_str("101").unwrap();
        assert_eq!(BitVector::from_hex(&w.to_hex(), 3).unwrap(), w);
    }

    fn arb_matrix() -> impl Strategy<Value = Gf2Matrix> {
        (1usize..6, 1usize..10).prop_flat_map(|(rows, cols)| {
            proptest::collection::vec(
                proptest::collection::vec(proptest::bool::ANY, cols),
                rows,
            )
            .prop_map(move |bits| {
                let rows: Vec<BitVector> = bits
                    .iter()
                    .map(|r| {
                        BitVector::from_bits(
                            &r.iter().map(|&b| b as u8).collect::<Vec<_>>(),
                        )
                    })
                    .collect();
                Gf2Matrix::from_rows(rows, cols).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn nullspace_is_orthogonal_and_has_complementary_rank(m in arb_matrix()) {
            let basis = m.nullspace_basis();
            prop_assert_eq!(basis.n_rows(), m.n_cols() - m.rank());
            if basis.n_rows() > 0 {
                prop_assert_eq!(basis.rank(), basis.n_rows());
                let prod = m.mul_transpose(&basis).unwrap();
                prop_assert!(prod.is_zero());
            }
        }

        #[test]
        fn weight_is_invariant_under_permutation(
            bits in proptest::collection::vec(proptest::bool::ANY, 1..40),
            seed in 0u64..1000,
        ) {
            let v = BitVector::from_bits(&bits.iter().map(|&b| b as u8).collect::<Vec<_>>());
            let mut mapping: Vec<usize> = (0..v.len()).collect();
            let mut rng = crate::rng::SplitMix64::new(seed);
            for i in (1..mapping.len()).rev() {
                let j = rng.next_below(i as u64 + 1) as usize;
                mapping.swap(i, j);
            }
            let p = Permutation::from_mapping(mapping).unwrap();
            prop_assert_eq!(p.apply(&v).unwrap().weight(), v.weight());
        }

        #[test]
        fn syndrome_is_linear(m in arb_matrix(), seed in 0u64..1000) {
            let cols = m.n_cols();
            let mut rng = crate::rng::SplitMix64::new(seed);
            let mut a = BitVector::zero(cols);
            let mut b = BitVector::zero(cols);
            for i in 0..cols {
                a.set(i, rng.next_bool(0.5));
                b.set(i, rng.next_bool(0.5));
            }
            let sum = a.xor(&b).unwrap();
            let lhs = m.syndrome(&sum).unwrap();
            let rhs = m.syndrome(&a).unwrap().xor(&m.syndrome(&b).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
