//! Quasi-cyclic LDPC construction and the syndrome-former / parity-former
//! split of a parity-check matrix.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gf2::{find_invertible_right_block, BitMatrix, BitVector, ColumnPermutation, RightBlock};

/// Rate-1/2 model matrix of IEEE 802.16e, defined for z = 96.
#[rustfmt::skip]
const WIMAX_RATE_HALF: [[i16; 24]; 12] = [
    [-1, 94, 73, -1, -1, -1, -1, -1, 55, 83, -1, -1,  7,  0, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1],
    [-1, 27, -1, -1, -1, 22, 79,  9, -1, -1, -1, 12, -1,  0,  0, -1, -1, -1, -1, -1, -1, -1, -1, -1],
    [-1, -1, -1, 24, 22, 81, -1, 33, -1, -1, -1,  0, -1, -1,  0,  0, -1, -1, -1, -1, -1, -1, -1, -1],
    [61, -1, 47, -1, -1, -1, -1, -1, 65, 25, -1, -1, -1, -1, -1,  0,  0, -1, -1, -1, -1, -1, -1, -1],
    [-1, -1, 39, -1, -1, -1, 84, -1, -1, 41, 72, -1, -1, -1, -1, -1,  0,  0, -1, -1, -1, -1, -1, -1],
    [-1, -1, -1, -1, 46, 40, -1, 82, -1, -1, -1, 79,  0, -1, -1, -1, -1,  0,  0, -1, -1, -1, -1, -1],
    [-1, -1, 95, 53, -1, -1, -1, -1, -1, 14, 18, -1, -1, -1, -1, -1, -1, -1,  0,  0, -1, -1, -1, -1],
    [-1, 11, 73, -1, -1, -1,  2, -1, -1, 47, -1, -1, -1, -1, -1, -1, -1, -1, -1,  0,  0, -1, -1, -1],
    [12, -1, -1, -1, 83, 24, -1, 43, -1, -1, -1, 51, -1, -1, -1, -1, -1, -1, -1, -1,  0,  0, -1, -1],
    [-1, -1, -1, -1, -1, 94, -1, 59, -1, -1, 70, 72, -1, -1, -1, -1, -1, -1, -1, -1, -1,  0,  0, -1],
    [-1, -1,  7, 65, -1, -1, -1, -1, 39, 49, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1,  0,  0],
    [43, -1, -1, -1, -1, 66, -1, 41, -1, -1, -1, 26,  7, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1,  0],
];

/// A quasi-cyclic model matrix: `-1` is a zero block, `e >= 0` a cyclically
/// shifted identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i16>,
    /// Lifting size the exponents are given for.
    design_z: usize,
    min_z: usize,
}

impl BaseMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i16>, design_z: usize, min_z: usize) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                what: "base matrix entries",
                expected: rows * cols,
                found: entries.len(),
            });
        }
        if entries.iter().any(|&e| e < -1 || e as i32 >= design_z as i32) {
            return Err(Error::InvalidParameter("base matrix exponent out of range"));
        }
        Ok(BaseMatrix {
            rows,
            cols,
            entries,
            design_z,
            min_z,
        })
    }

    /// The 12×24 rate-1/2 WiMAX model matrix (z from 24 to 96).
    pub fn wimax_rate_half() -> Self {
        BaseMatrix {
            rows: 12,
            cols: 24,
            entries: WIMAX_RATE_HALF.iter().flatten().copied().collect(),
            design_z: 96,
            min_z: 24,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> i16 {
        self.entries[r * self.cols + c]
    }

    /// Exponent scaled to lifting size `z`: `floor(e·z / design_z)`.
    pub fn scaled_entry(&self, r: usize, c: usize, z: usize) -> i16 {
        let e = self.entry(r, c);
        if e < 0 {
            e
        } else {
            (e as usize * z / self.design_z) as i16
        }
    }

    /// Expands every entry into a `z×z` block.
    pub fn lift(&self, z: usize) -> Result<BitMatrix> {
        if z < self.min_z || z > self.design_z {
            return Err(Error::InvalidLiftingSize(z));
        }
        let mut h = BitMatrix::zeros(self.rows * z, self.cols * z);
        for br in 0..self.rows {
            for bc in 0..self.cols {
                let e = self.scaled_entry(br, bc, z);
                if e < 0 {
                    continue;
                }
                for r in 0..z {
                    h.set(br * z + r, bc * z + (r + e as usize) % z, true);
                }
            }
        }
        Ok(h)
    }
}

/// The `z×z` identity cyclically shifted right by `shift`; `None` gives the
/// zero block.
pub fn circulant(shift: Option<usize>, z: usize) -> BitMatrix {
    let mut b = BitMatrix::zeros(z, z);
    if let Some(s) = shift {
        for r in 0..z {
            b.set(r, (r + s) % z, true);
        }
    }
    b
}

/// Sparse view of a parity-check matrix for message passing.
///
/// Edges are numbered in check-major order; `var_edges` lists, per variable,
/// the edge ids incident to it.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    pub n: usize,
    pub m: usize,
    check_ptr: Vec<usize>,
    edge_var: Vec<usize>,
    var_ptr: Vec<usize>,
    var_edges: Vec<usize>,
}

impl TannerGraph {
    pub fn from_matrix(h: &BitMatrix) -> Self {
        let (m, n) = (h.nrows(), h.ncols());
        let mut check_ptr = Vec::with_capacity(m + 1);
        let mut edge_var = Vec::new();
        check_ptr.push(0);
        for r in h.rows() {
            edge_var.extend(r.ones_positions());
            check_ptr.push(edge_var.len());
        }
        let mut degree = vec![0usize; n];
        for &v in &edge_var {
            degree[v] += 1;
        }
        let mut var_ptr = Vec::with_capacity(n + 1);
        var_ptr.push(0);
        for d in &degree {
            var_ptr.push(var_ptr.last().unwrap() + d);
        }
        let mut fill = var_ptr.clone();
        let mut var_edges = vec![0; edge_var.len()];
        for (e, &v) in edge_var.iter().enumerate() {
            var_edges[fill[v]] = e;
            fill[v] += 1;
        }
        TannerGraph {
            n,
            m,
            check_ptr,
            edge_var,
            var_ptr,
            var_edges,
        }
    }

    pub fn edges(&self) -> usize {
        self.edge_var.len()
    }

    /// Edge id range of check `c`.
    #[inline]
    pub fn check_edges(&self, c: usize) -> core::ops::Range<usize> {
        self.check_ptr[c]..self.check_ptr[c + 1]
    }

    /// Variable at the end of edge `e`.
    #[inline]
    pub fn edge_var(&self, e: usize) -> usize {
        self.edge_var[e]
    }

    /// Edge ids incident to variable `v`.
    #[inline]
    pub fn var_edges(&self, v: usize) -> &[usize] {
        &self.var_edges[self.var_ptr[v]..self.var_ptr[v + 1]]
    }

    /// True when `hard` satisfies every check.
    pub fn is_codeword(&self, hard: &BitVector) -> bool {
        (0..self.m).all(|c| self.check_edges(c).filter(|&e| hard.get(self.edge_var[e])).count() % 2 == 0)
    }
}

/// A parity-check matrix `H = [H_s | H_p]` with `H_s` of size `m×(k−ℓ)` and
/// `H_p` of size `m×(m+ℓ)`, plus shortening bookkeeping.
///
/// Codeword positions are always in the natural column order of `H`.
#[derive(Clone, Debug)]
pub struct LinearCodeLayout {
    h: BitMatrix,
    n: usize,
    k: usize,
    m: usize,
    ell: usize,
    shortened: usize,
    h_s: BitMatrix,
    h_p: BitMatrix,
    parity_block: RightBlock,
    graph: TannerGraph,
}

impl LinearCodeLayout {
    /// Splits `h` at column `k − ell`.
    ///
    /// Fails if `H_p` has rank below `m`, since the coset of solutions would
    /// then have dimension larger than `ell` or be empty for some syndromes.
    pub fn partition(h: BitMatrix, ell: usize) -> Result<Self> {
        let (m, n) = (h.nrows(), h.ncols());
        if m > n {
            return Err(Error::InvalidParameter("more checks than columns"));
        }
        let k = n - m;
        if ell > k {
            return Err(Error::InvalidParameter("ell exceeds code dimension"));
        }
        let split = k - ell;
        let h_s = h.column_range(0, split);
        let h_p = h.column_range(split, n);
        let parity_block = find_invertible_right_block(&h_p)?;
        let graph = TannerGraph::from_matrix(&h);
        Ok(LinearCodeLayout {
            h,
            n,
            k,
            m,
            ell,
            shortened: 0,
            h_s,
            h_p,
            parity_block,
            graph,
        })
    }

    /// Lifts the rate-1/2 WiMAX model matrix and partitions it.
    pub fn wimax_rate_half(z: usize, ell: usize) -> Result<Self> {
        Self::partition(BaseMatrix::wimax_rate_half().lift(z)?, ell)
    }

    /// Freezes the first `count` systematic positions to zero.
    pub fn shorten(&self, count: usize) -> Result<Self> {
        if count > self.k - self.ell {
            return Err(Error::InvalidParameter("shortening exceeds the systematic part"));
        }
        let mut out = self.clone();
        out.shortened = count;
        Ok(out)
    }

    pub fn h(&self) -> &BitMatrix {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Length of the systematic part `v`, i.e. `k − ℓ`.
    pub fn systematic_len(&self) -> usize {
        self.k - self.ell
    }

    /// Length of the parity part `p`, i.e. `m + ℓ`.
    pub fn parity_len(&self) -> usize {
        self.m + self.ell
    }

    pub fn shortened(&self) -> usize {
        self.shortened
    }

    /// Codeword positions frozen to zero and never transmitted.
    pub fn shortened_positions(&self) -> core::ops::Range<usize> {
        0..self.shortened
    }

    /// Number of transmitted positions.
    pub fn transmitted_len(&self) -> usize {
        self.n - self.shortened
    }

    pub fn fec_rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    /// `(k − s)/(n − s)` for `s` shortened positions.
    pub fn effective_rate(&self) -> f64 {
        (self.k - self.shortened) as f64 / (self.n - self.shortened) as f64
    }

    /// Syndrome former `H_s`.
    pub fn h_s(&self) -> &BitMatrix {
        &self.h_s
    }

    /// Parity former `H_p`.
    pub fn h_p(&self) -> &BitMatrix {
        &self.h_p
    }

    /// Column reordering within the `H_p` span that moves an invertible
    /// `m×m` block to the right.
    pub fn parity_perm(&self) -> &ColumnPermutation {
        &self.parity_block.permutation
    }

    pub(crate) fn parity_block(&self) -> &RightBlock {
        &self.parity_block
    }

    pub fn graph(&self) -> &TannerGraph {
        &self.graph
    }

    /// `c·Hᵀ`.
    pub fn syndrome(&self, c: &BitVector) -> Result<BitVector> {
        self.h.mul_vec_mt(c)
    }
}
