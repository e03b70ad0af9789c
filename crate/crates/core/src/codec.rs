//! Systematic, layered and dirty-paper encoders built on a
//! [`LinearCodeLayout`].

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{check_len, Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::ldpc::LinearCodeLayout;
use crate::sdm::{CostFunction, SdmSpec};

/// A codeword `[v | p]` in natural column order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    bits: BitVector,
    split: usize,
}

impl Codeword {
    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    pub fn into_bits(self) -> BitVector {
        self.bits
    }

    /// The systematic part `v` (first `k − ℓ` bits).
    pub fn systematic(&self) -> BitVector {
        self.bits.slice(0, self.split)
    }

    /// The parity part `p` (last `m + ℓ` bits).
    pub fn parity(&self) -> BitVector {
        self.bits.slice(self.split, self.bits.len())
    }
}

/// Interferer label: `a(−1) = 0`, `a(+1) = 1`.
pub fn label(z: &[i8]) -> Result<BitVector> {
    let mut a = BitVector::zeros(z.len());
    for (i, &zi) in z.iter().enumerate() {
        match zi {
            -1 => {}
            1 => a.set(i, true),
            _ => return Err(Error::InvalidInterferer { index: i }),
        }
    }
    Ok(a)
}

/// Fraction of `positions` where `b` agrees with `a`.
pub fn agreement(b: &BitVector, a: &BitVector, positions: core::ops::Range<usize>) -> f64 {
    let n = positions.len();
    if n == 0 {
        return 0.0;
    }
    let same = positions.filter(|&i| b.get(i) == a.get(i)).count();
    same as f64 / n as f64
}

/// Layered encoder: systematic bits `v`, parity chosen by an SDM over `H_p`.
#[derive(Clone, Debug)]
pub struct LlpsEncoder {
    layout: LinearCodeLayout,
    parity_sdm: SdmSpec,
}

impl LlpsEncoder {
    pub fn new(layout: LinearCodeLayout, materialize: bool) -> Result<Self> {
        let parity_sdm = SdmSpec::with_block(layout.h_p().clone(), layout.parity_block().clone(), materialize)?;
        Ok(LlpsEncoder { layout, parity_sdm })
    }

    pub fn layout(&self) -> &LinearCodeLayout {
        &self.layout
    }

    pub fn parity_sdm(&self) -> &SdmSpec {
        &self.parity_sdm
    }

    /// `[0_s | info]` for a layout with `s` shortened positions.
    pub fn systematic_from_info(&self, info: &BitVector) -> Result<BitVector> {
        let s = self.layout.shortened();
        check_len("information bits", self.layout.systematic_len() - s, info.len())?;
        Ok(BitVector::zeros(s).concat(info))
    }

    fn check_systematic(&self, v: &BitVector) -> Result<()> {
        check_len("systematic part", self.layout.systematic_len(), v.len())?;
        if self.layout.shortened_positions().any(|i| v.get(i)) {
            return Err(Error::InvalidParameter("shortened positions must be zero"));
        }
        Ok(())
    }

    /// Classic systematic encoding: `s = v·H_sᵀ`, `p = s·(H_pᵀ)⁻¹`.
    pub fn pas_encode(&self, v: &BitVector) -> Result<Codeword> {
        if self.layout.ell() != 0 {
            return Err(Error::InvalidParameter("systematic encoding needs ell = 0"));
        }
        self.check_systematic(v)?;
        let s = self.layout.h_s().mul_vec_mt(v)?;
        let p = self.parity_sdm.particular_solution(&s)?;
        Ok(self.assemble(v, &p))
    }

    /// Layered encoding: `s = v·H_sᵀ`, then the SDM picks the cheapest `p`
    /// with `p·H_pᵀ = s`.
    pub fn llps_encode(&self, v: &BitVector, cost: &CostFunction) -> Result<Codeword> {
        self.check_systematic(v)?;
        let s = self.layout.h_s().mul_vec_mt(v)?;
        let p = self.parity_sdm.match_syndrome(&s, cost)?;
        Ok(self.assemble(v, &p))
    }

    fn assemble(&self, v: &BitVector, p: &BitVector) -> Codeword {
        Codeword {
            bits: v.concat(p),
            split: v.len(),
        }
    }
}

/// Dirty-paper encoder: an outer SDM over `H_v = [random | I]` shapes the
/// systematic part from the information bits, an inner SDM over `H_p`
/// shapes the parity. Both match the label of the interferer.
#[derive(Clone, Debug)]
pub struct DpcEncoder {
    inner: LlpsEncoder,
    hv: BitMatrix,
    outer_sdm: SdmSpec,
    k_info: usize,
    hv_seed: u64,
}

impl DpcEncoder {
    /// `H_v` is `k_info × (k − ℓ − s)`; its left block is drawn from a
    /// ChaCha8 stream seeded with `hv_seed`.
    pub fn new(layout: LinearCodeLayout, k_info: usize, hv_seed: u64, materialize: bool) -> Result<Self> {
        let free = layout.systematic_len() - layout.shortened();
        if k_info > free {
            return Err(Error::InvalidParameter("k_info exceeds free systematic positions"));
        }
        let hv = random_identity_right(k_info, free, hv_seed);
        let outer_sdm = SdmSpec::build(hv.clone(), materialize)?;
        let inner = LlpsEncoder::new(layout, materialize)?;
        Ok(DpcEncoder {
            inner,
            hv,
            outer_sdm,
            k_info,
            hv_seed,
        })
    }

    pub fn layout(&self) -> &LinearCodeLayout {
        self.inner.layout()
    }

    pub fn hv(&self) -> &BitMatrix {
        &self.hv
    }

    pub fn k_info(&self) -> usize {
        self.k_info
    }

    pub fn hv_seed(&self) -> u64 {
        self.hv_seed
    }

    pub fn outer_sdm(&self) -> &SdmSpec {
        &self.outer_sdm
    }

    pub fn inner_sdm(&self) -> &SdmSpec {
        self.inner.parity_sdm()
    }

    /// `k_info / n`.
    pub fn rate(&self) -> f64 {
        self.k_info as f64 / self.layout().transmitted_len() as f64
    }

    pub fn encode(&self, u: &BitVector, z: &[i8]) -> Result<Codeword> {
        let layout = self.inner.layout();
        check_len("information bits", self.k_info, u.len())?;
        check_len("interferer", layout.n(), z.len())?;
        let a = label(z)?;
        let s = layout.shortened();
        let split = layout.systematic_len();
        let v_free = self
            .outer_sdm
            .match_syndrome(u, &CostFunction::pattern_match(a.slice(s, split)))?;
        let v = BitVector::zeros(s).concat(&v_free);
        let syn = layout.h_s().mul_vec_mt(&v)?;
        let p = self
            .inner
            .parity_sdm()
            .match_syndrome(&syn, &CostFunction::pattern_match(a.slice(split, layout.n())))?;
        Ok(Codeword {
            bits: v.concat(&p),
            split,
        })
    }

    /// `û = v̂·H_vᵀ` over the non-shortened systematic positions.
    pub fn recover_info(&self, v_hat: &BitVector) -> Result<BitVector> {
        let layout = self.inner.layout();
        check_len("systematic part", layout.systematic_len(), v_hat.len())?;
        self.hv.mul_vec_mt(&v_hat.slice(layout.shortened(), v_hat.len()))
    }
}

fn random_identity_right(rows: usize, cols: usize, seed: u64) -> BitMatrix {
    let left = cols - rows;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows_vec: Vec<BitVector> = (0..rows)
        .map(|r| {
            let words = (0..left.div_ceil(64)).map(|_| rng.next_u64()).collect();
            let random = BitVector::from_words(words, left);
            random.concat(&BitVector::unit(rows, r))
        })
        .collect();
    BitMatrix::from_rows(rows_vec, cols).expect("rows built with cols bits")
}
