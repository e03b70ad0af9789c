//! Dense bit-packed linear algebra over GF(2).
//!
//! Vectors are packed little-endian into `u64` words: bit `i` lives in word
//! `i / 64` at position `i % 64`. Padding bits past `len` are always zero, so
//! Hamming weights are plain popcounts over the word slice.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{BitXor, BitXorAssign};

use crate::error::{check_len, Error, Result};

const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A packed binary vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            words: vec![0; words_for(len)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVector {
            words: vec![!0; words_for(len)],
            len,
        };
        v.clear_padding();
        v
    }

    /// Unit vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % WORD_BITS == 0 {
                words.push(0);
            }
            if b {
                words[len / WORD_BITS] |= 1 << (len % WORD_BITS);
            }
            len += 1;
        }
        BitVector { words, len }
    }

    /// Builds a vector from a slice of 0/1 values; any nonzero entry is a one.
    pub fn from_bits(bits: &[u8]) -> Self {
        Self::from_bools(bits.iter().map(|&b| b != 0))
    }

    /// Wraps raw words. Padding bits beyond `len` are cleared.
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.resize(words_for(len), 0);
        let mut v = BitVector { words, len };
        v.clear_padding();
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] ^= 1 << (i % WORD_BITS);
    }

    /// Hamming weight.
    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Hamming distance, i.e. the weight of `self ^ other`.
    pub fn distance(&self, other: &BitVector) -> usize {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        let acc = self
            .words
            .iter()
            .zip(&other.words)
            .fold(0u64, |acc, (a, b)| acc ^ (a & b));
        acc.count_ones() & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of the set bits in increasing order.
    pub fn ones_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            core::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD_BITS + tz)
                }
            })
        })
    }

    /// Bits `[start, end)` as a new vector.
    pub fn slice(&self, start: usize, end: usize) -> BitVector {
        assert!(start <= end && end <= self.len, "bad slice {start}..{end}");
        BitVector::from_bools((start..end).map(|i| self.get(i)))
    }

    /// `[self | other]`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        BitVector::from_bools(self.iter().chain(other.iter()))
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }

    fn clear_padding(&mut self) {
        let tail = self.len % WORD_BITS;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }
}

impl BitXorAssign<&BitVector> for BitVector {
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        assert_eq!(self.len, rhs.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor for &BitVector {
    type Output = BitVector;

    fn bitxor(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector[{}](", self.len)?;
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

/// A dense binary matrix stored row-wise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<BitVector>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows: vec![BitVector::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
            cols: n,
        }
    }

    /// Builds a matrix with `cols` columns from its rows.
    pub fn from_rows(rows: Vec<BitVector>, cols: usize) -> Result<Self> {
        for r in &rows {
            check_len("matrix row", cols, r.len())?;
        }
        Ok(BitMatrix { rows, cols })
    }

    /// Convenience constructor from nested 0/1 slices.
    pub fn from_dense<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_rows(rows.iter().map(|r| BitVector::from_bits(r.as_ref())).collect(), cols)
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_bools(self.rows.iter().map(|r| r.get(c)))
    }

    /// Number of ones in every row.
    pub fn row_weights(&self) -> Vec<usize> {
        self.rows.iter().map(BitVector::weight).collect()
    }

    /// Number of ones in every column.
    pub fn column_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for r in &self.rows {
            for c in r.ones_positions() {
                w[c] += 1;
            }
        }
        w
    }

    /// Computes `v·Mᵀ`: bit `i` of the result is the parity of `v AND row_i`.
    pub fn mul_vec_mt(&self, v: &BitVector) -> Result<BitVector> {
        check_len("vector times transpose", self.cols, v.len())?;
        Ok(BitVector::from_bools(self.rows.iter().map(|r| r.dot(v))))
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        check_len("matrix product inner dimension", self.cols, other.nrows())?;
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVector::zeros(other.cols);
                for j in r.ones_positions() {
                    acc ^= &other.rows[j];
                }
                acc
            })
            .collect();
        Ok(BitMatrix { rows, cols: other.cols })
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones_positions() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// The submatrix made of the listed columns, in the listed order.
    pub fn select_columns(&self, columns: &[usize]) -> BitMatrix {
        let rows = self
            .rows
            .iter()
            .map(|r| BitVector::from_bools(columns.iter().map(|&c| r.get(c))))
            .collect();
        BitMatrix {
            rows,
            cols: columns.len(),
        }
    }

    /// Columns `[start, end)`.
    pub fn column_range(&self, start: usize, end: usize) -> BitMatrix {
        let rows = self.rows.iter().map(|r| r.slice(start, end)).collect();
        BitMatrix {
            rows,
            cols: end - start,
        }
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == m.nrows() {
                break;
            }
            let Some(p) = (next..m.nrows()).find(|&r| m.rows[r].get(c)) else {
                continue;
            };
            m.rows.swap(next, p);
            let pivot_row = m.rows[next].clone();
            for (r, row) in m.rows.iter_mut().enumerate() {
                if r != next && row.get(c) {
                    *row ^= &pivot_row;
                }
            }
            pivots.push(c);
            next += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Inverse of a square matrix by Gauss-Jordan elimination.
    pub fn invert(&self) -> Result<BitMatrix> {
        let n = self.nrows();
        check_len("square matrix columns", n, self.cols)?;
        let mut a = self.clone();
        let mut inv = BitMatrix::identity(n);
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| a.rows[r].get(c)) else {
                return Err(Error::Singular {
                    rank: self.rank(),
                    dim: n,
                });
            };
            a.rows.swap(c, p);
            inv.rows.swap(c, p);
            let (pa, pi) = (a.rows[c].clone(), inv.rows[c].clone());
            for r in 0..n {
                if r != c && a.rows[r].get(c) {
                    a.rows[r] ^= &pa;
                    inv.rows[r] ^= &pi;
                }
            }
        }
        Ok(inv)
    }

    /// A basis of `{x : x·Mᵀ = 0}`, one vector per non-pivot column.
    pub fn nullspace_basis(&self) -> Vec<BitVector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = BitVector::unit(self.cols, f);
                for (i, &pc) in pivots.iter().enumerate() {
                    if r.rows[i].get(f) {
                        x.set(pc, true);
                    }
                }
                x
            })
            .collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.nrows(), self.cols)?;
        for r in &self.rows {
            f.write_str("  ")?;
            for b in r.iter() {
                f.write_str(if b { "1" } else { "0" })?;
            }
            f.write_str("\n")?;
        }
        f.write_str("]")
    }
}

/// A column reordering: entry `i` names the original column placed at `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnPermutation(Vec<usize>);

impl ColumnPermutation {
    pub fn identity(n: usize) -> Self {
        ColumnPermutation((0..n).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &c)| i == c)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reorders `v` so that output bit `i` is input bit `self[i]`.
    pub fn apply(&self, v: &BitVector) -> BitVector {
        BitVector::from_bools(self.0.iter().map(|&c| v.get(c)))
    }

    /// Undoes [`apply`](Self::apply).
    pub fn unapply(&self, v: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(v.len());
        for (i, &c) in self.0.iter().enumerate() {
            out.set(c, v.get(i));
        }
        out
    }
}

/// Result of [`find_invertible_right_block`].
#[derive(Clone, Debug)]
pub struct RightBlock {
    /// Reordering that moves the selected columns to the right end.
    pub permutation: ColumnPermutation,
    /// The selected columns of the input, ascending.
    pub columns: Vec<usize>,
    /// Inverse of the `m×m` block formed by `columns`.
    pub inverse: BitMatrix,
}

/// Selects `m` independent columns of an `m×w` matrix, preferring the
/// rightmost ones, and inverts the block they form.
///
/// Columns are scanned from right to left and kept whenever they are
/// independent of the columns kept so far. If the natural right `m×m` block
/// is already invertible the permutation is the identity.
pub fn find_invertible_right_block(m: &BitMatrix) -> Result<RightBlock> {
    let rows = m.nrows();
    let w = m.ncols();
    if w < rows {
        return Err(Error::RankDeficient {
            rank: m.rank(),
            required: rows,
        });
    }
    let t = m.transpose();
    // Echelon basis; each entry has all earlier pivots cleared.
    let mut basis: Vec<(usize, BitVector)> = Vec::with_capacity(rows);
    let mut chosen = Vec::with_capacity(rows);
    for c in (0..w).rev() {
        if chosen.len() == rows {
            break;
        }
        let mut v = t.row(c).clone();
        for (p, b) in &basis {
            if v.get(*p) {
                v ^= b;
            }
        }
        let pivot = v.ones_positions().next();
        if let Some(p) = pivot {
            basis.push((p, v));
            chosen.push(c);
        }
    }
    if chosen.len() < rows {
        return Err(Error::RankDeficient {
            rank: chosen.len(),
            required: rows,
        });
    }
    chosen.reverse();
    let mut selected = vec![false; w];
    for &c in &chosen {
        selected[c] = true;
    }
    let order: Vec<usize> = (0..w).filter(|&c| !selected[c]).chain(chosen.iter().copied()).collect();
    let inverse = m.select_columns(&chosen).invert()?;
    Ok(RightBlock {
        permutation: ColumnPermutation(order),
        columns: chosen,
        inverse,
    })
}
