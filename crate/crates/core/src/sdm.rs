//! Syndrome distribution matching.
//!
//! Given a parity former `H_p` of size `m×(m+ℓ)` with rank `m`, the SDM maps
//! a syndrome `s` to the cheapest vector of the coset
//! `{x ⊕ p̃(s) : x ∈ C_p}`, where `C_p` is the null space of `H_p` and
//! `p̃(s)` is zero outside an invertible `m×m` column block.
//!
//! The search visits the `2^ℓ` coset members in binary-reflected Gray-code
//! order starting from `p̃(s)` itself and returns the first minimum.

use alloc::vec;
use alloc::vec::Vec;

use libm::log2;

use crate::error::{check_len, Error, Result};
use crate::gf2::{find_invertible_right_block, BitMatrix, BitVector, RightBlock};

/// Largest coset dimension the exhaustive walk accepts.
pub const MAX_ELL: usize = 40;
/// Largest coset dimension for which the member table may be materialized.
pub const MAX_TABLE_ELL: usize = 24;

/// Cost minimized by the matcher.
#[derive(Clone, Debug, PartialEq)]
pub enum CostFunction {
    /// Number of ones.
    HammingWeight,
    /// Normalized cross entropy `(1/N)·Σ log2(1/P_B(p_i))` against a binary
    /// distribution with `P_B(0) = p0`.
    CrossEntropy { p0: f64 },
    /// Hamming distance to a target pattern.
    PatternMatch { target: BitVector },
}

impl CostFunction {
    pub fn cross_entropy(p0: f64) -> Result<Self> {
        if p0 > 0.0 && p0 < 1.0 {
            Ok(CostFunction::CrossEntropy { p0 })
        } else {
            Err(Error::InvalidCost("cross entropy needs 0 < P_B(0) < 1"))
        }
    }

    pub fn pattern_match(target: BitVector) -> Self {
        CostFunction::PatternMatch { target }
    }

    /// Evaluates the cost of `p`.
    pub fn eval(&self, p: &BitVector) -> Result<f64> {
        match self {
            CostFunction::HammingWeight => Ok(p.weight() as f64),
            CostFunction::CrossEntropy { p0 } => {
                if p.is_empty() {
                    return Ok(0.0);
                }
                let n = p.len() as f64;
                let w = p.weight() as f64;
                Ok(((n - w) * -log2(*p0) + w * -log2(1.0 - p0)) / n)
            }
            CostFunction::PatternMatch { target } => {
                check_len("pattern target", p.len(), target.len())?;
                Ok(p.distance(target) as f64)
            }
        }
    }

    /// Reduces the cost to "Hamming weight of `p ⊕ offset`", up to a
    /// positive affine map. `None` means the cost is constant.
    ///
    /// Cross entropy over a binary alphabet is affine in the weight: it is
    /// minimized by minimizing the weight when `P_B(0) > ½` and by
    /// maximizing it (minimizing the weight of the complement) otherwise.
    fn weight_offset(&self, len: usize) -> Result<Option<BitVector>> {
        match self {
            CostFunction::HammingWeight => Ok(Some(BitVector::zeros(len))),
            CostFunction::CrossEntropy { p0 } => {
                if *p0 > 0.5 {
                    Ok(Some(BitVector::zeros(len)))
                } else if *p0 < 0.5 {
                    Ok(Some(BitVector::ones(len)))
                } else {
                    Ok(None)
                }
            }
            CostFunction::PatternMatch { target } => {
                check_len("pattern target", len, target.len())?;
                Ok(Some(target.clone()))
            }
        }
    }
}

/// Precomputed matcher state for one parity former.
#[derive(Clone, Debug)]
pub struct SdmSpec {
    hp: BitMatrix,
    block: RightBlock,
    coset_basis: Vec<BitVector>,
    /// Row-major `(m+ℓ)`-bit words of every coset member, in Gray order.
    table: Option<Vec<u64>>,
    words: usize,
}

impl SdmSpec {
    /// Precomputes the coset code `C_p` of `hp`. With `materialize`, all
    /// `2^ℓ` members are stored; otherwise they are regenerated per query.
    pub fn build(hp: BitMatrix, materialize: bool) -> Result<Self> {
        let block = find_invertible_right_block(&hp)?;
        Self::with_block(hp, block, materialize)
    }

    pub(crate) fn with_block(hp: BitMatrix, block: RightBlock, materialize: bool) -> Result<Self> {
        let (m, w) = (hp.nrows(), hp.ncols());
        let ell = w - m;
        if ell > MAX_ELL {
            return Err(Error::InvalidParameter("coset dimension too large"));
        }
        if materialize && ell > MAX_TABLE_ELL {
            return Err(Error::InvalidParameter("coset table too large to materialize"));
        }
        let mut in_block = vec![false; w];
        for &c in &block.columns {
            in_block[c] = true;
        }
        // Systematic basis: unit vector on a free column plus the block
        // columns that cancel its syndrome.
        let coset_basis: Vec<BitVector> = (0..w)
            .filter(|&c| !in_block[c])
            .map(|c| {
                let t = block.inverse.mul_vec_mt(&hp.column(c)).expect("block inverse is m x m");
                let mut x = BitVector::unit(w, c);
                for (i, &bc) in block.columns.iter().enumerate() {
                    if t.get(i) {
                        x.set(bc, true);
                    }
                }
                x
            })
            .collect();
        let words = crate::gf2::words_for(w);
        let mut spec = SdmSpec {
            hp,
            block,
            coset_basis,
            table: None,
            words,
        };
        if materialize {
            spec.table = Some(spec.gray_table());
        }
        Ok(spec)
    }

    fn gray_table(&self) -> Vec<u64> {
        let count = 1usize << self.ell();
        let mut table = vec![0u64; count * self.words];
        let mut cur = vec![0u64; self.words];
        for i in 1..count {
            let b = &self.coset_basis[i.trailing_zeros() as usize];
            for (c, x) in cur.iter_mut().zip(b.words()) {
                *c ^= x;
            }
            table[i * self.words..(i + 1) * self.words].copy_from_slice(&cur);
        }
        table
    }

    pub fn m(&self) -> usize {
        self.hp.nrows()
    }

    pub fn ell(&self) -> usize {
        self.hp.ncols() - self.hp.nrows()
    }

    /// Output length `m + ℓ`.
    pub fn len(&self) -> usize {
        self.hp.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.hp.ncols() == 0
    }

    pub fn hp(&self) -> &BitMatrix {
        &self.hp
    }

    pub fn right_block(&self) -> &RightBlock {
        &self.block
    }

    /// Basis of `C_p`, one vector per column outside the invertible block.
    pub fn coset_basis(&self) -> &[BitVector] {
        &self.coset_basis
    }

    pub fn is_materialized(&self) -> bool {
        self.table.is_some()
    }

    /// All `2^ℓ` members of `C_p` in enumeration order, if materialized.
    pub fn coset_table(&self) -> Option<Vec<BitVector>> {
        self.table.as_ref().map(|t| {
            t.chunks(self.words.max(1))
                .take(1 << self.ell())
                .map(|c| BitVector::from_words(c.to_vec(), self.len()))
                .collect()
        })
    }

    /// `p̃(s)`: the coset representative that is zero outside the invertible
    /// block, with `s·(Rᵀ)⁻¹` on the block columns.
    pub fn particular_solution(&self, s: &BitVector) -> Result<BitVector> {
        check_len("syndrome", self.m(), s.len())?;
        let t = self.block.inverse.mul_vec_mt(s)?;
        let mut p = BitVector::zeros(self.len());
        for (i, &c) in self.block.columns.iter().enumerate() {
            if t.get(i) {
                p.set(c, true);
            }
        }
        Ok(p)
    }

    /// The minimum-cost `p` with `p·H_pᵀ = s`.
    pub fn match_syndrome(&self, s: &BitVector, cost: &CostFunction) -> Result<BitVector> {
        let base = self.particular_solution(s)?;
        let Some(offset) = cost.weight_offset(self.len())? else {
            return Ok(base);
        };
        let start = &base ^ &offset;
        let best = self.min_weight_member(&start);
        Ok(&base ^ &best)
    }

    /// Member `x` of `C_p` minimizing `wt(start ⊕ x)`; first minimum in
    /// enumeration order.
    fn min_weight_member(&self, start: &BitVector) -> BitVector {
        let count = 1usize << self.ell();
        let mut best_idx = 0usize;
        let mut best_w = start.weight();
        if best_w == 0 || count == 1 {
            return BitVector::zeros(self.len());
        }
        if let Some(table) = &self.table {
            let s = start.words();
            for (i, member) in table.chunks_exact(self.words).enumerate().skip(1) {
                let w: u32 = member.iter().zip(s).map(|(a, b)| (a ^ b).count_ones()).sum();
                if (w as usize) < best_w {
                    best_w = w as usize;
                    best_idx = i;
                }
            }
        } else {
            let mut cur = start.words().to_vec();
            for i in 1..count {
                let b = self.coset_basis[i.trailing_zeros() as usize].words();
                let mut w = 0u32;
                for (c, x) in cur.iter_mut().zip(b) {
                    *c ^= x;
                    w += c.count_ones();
                }
                if (w as usize) < best_w {
                    best_w = w as usize;
                    best_idx = i;
                }
            }
        }
        self.gray_member(best_idx)
    }

    /// The coset member visited at step `i` of the Gray-code walk.
    fn gray_member(&self, i: usize) -> BitVector {
        let gray = i ^ (i >> 1);
        let mut x = BitVector::zeros(self.len());
        for (j, b) in self.coset_basis.iter().enumerate() {
            if (gray >> j) & 1 == 1 {
                x ^= b;
            }
        }
        x
    }

    /// `p·H_pᵀ`, the inverse of [`match_syndrome`](Self::match_syndrome).
    pub fn recover_syndrome(&self, p: &BitVector) -> Result<BitVector> {
        self.hp.mul_vec_mt(p)
    }
}

/// Offline matcher: a table indexed by syndrome holding the minimum-cost
/// vector of each coset, built by exhaustive enumeration of all `2^(m+ℓ)`
/// vectors. Only practical for small codes.
#[derive(Clone, Debug)]
pub struct SyndromeLut {
    entries: Vec<BitVector>,
    costs: Vec<f64>,
}

impl SyndromeLut {
    pub const MAX_LEN: usize = 24;

    pub fn build(hp: &BitMatrix, cost: &CostFunction) -> Result<Self> {
        let (m, w) = (hp.nrows(), hp.ncols());
        if w > Self::MAX_LEN {
            return Err(Error::InvalidParameter("syndrome table too large"));
        }
        let mut entries = vec![BitVector::zeros(w); 1 << m];
        let mut costs = vec![f64::INFINITY; 1 << m];
        for bits in 0u64..(1 << w) {
            let p = BitVector::from_words(vec![bits], w);
            let s = hp.mul_vec_mt(&p)?;
            let idx = s.words().first().copied().unwrap_or(0) as usize;
            let c = cost.eval(&p)?;
            if c < costs[idx] {
                costs[idx] = c;
                entries[idx] = p;
            }
        }
        if costs.iter().any(|c| c.is_infinite()) {
            return Err(Error::RankDeficient {
                rank: hp.rank(),
                required: m,
            });
        }
        Ok(SyndromeLut { entries, costs })
    }

    /// Syndromes are indexed by their packed bits (bit `i` of the index is
    /// syndrome bit `i`).
    pub fn lookup(&self, s: &BitVector) -> &BitVector {
        &self.entries[s.words().first().copied().unwrap_or(0) as usize]
    }

    pub fn min_cost(&self, s: &BitVector) -> f64 {
        self.costs[s.words().first().copied().unwrap_or(0) as usize]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
