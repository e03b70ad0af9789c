//! Flooding sum-product decoding in the LLR domain.
//!
//! LLRs follow the convention `L = log P(0)/P(1)`. Check nodes use the tanh
//! rule with leave-one-out prefix/suffix products; when the product saturates
//! to ±1 in floating point the message falls back to sign-product times the
//! smallest other magnitude. All messages are clamped to ±[`LLR_CLAMP`].

use alloc::vec;
use alloc::vec::Vec;

use libm::{expm1, log1p};

use crate::channel::LLR_CLAMP;
use crate::error::{check_len, Result};
use crate::gf2::BitVector;
use crate::ldpc::TannerGraph;

/// Outcome of one decoding attempt.
#[derive(Clone, Debug, PartialEq)]
pub struct DecodeOutcome {
    pub hard: BitVector,
    /// The hard decision satisfies every check.
    pub converged: bool,
    pub iterations: usize,
}

/// Per-worker decoder scratch. Not shared between threads.
#[derive(Clone, Debug)]
pub struct BpDecoder<'g> {
    graph: &'g TannerGraph,
    c2v: Vec<f64>,
    v2c: Vec<f64>,
    posterior: Vec<f64>,
    t: Vec<f64>,
    fwd: Vec<f64>,
    bwd: Vec<f64>,
}

impl<'g> BpDecoder<'g> {
    pub fn new(graph: &'g TannerGraph) -> Self {
        let max_deg = (0..graph.m).map(|c| graph.check_edges(c).len()).max().unwrap_or(0);
        BpDecoder {
            graph,
            c2v: vec![0.0; graph.edges()],
            v2c: vec![0.0; graph.edges()],
            posterior: vec![0.0; graph.n],
            t: vec![0.0; max_deg],
            fwd: vec![0.0; max_deg + 1],
            bwd: vec![0.0; max_deg + 1],
        }
    }

    /// Posterior LLRs after the last decode.
    pub fn posterior(&self) -> &[f64] {
        &self.posterior
    }

    /// Runs up to `max_iter` iterations, stopping as soon as the hard
    /// decision is a codeword.
    pub fn decode(&mut self, channel: &[f64], max_iter: usize) -> Result<DecodeOutcome> {
        let g = self.graph;
        check_len("channel LLRs", g.n, channel.len())?;
        for (e, m) in self.v2c.iter_mut().enumerate() {
            *m = channel[g.edge_var(e)].clamp(-LLR_CLAMP, LLR_CLAMP);
        }
        self.c2v.fill(0.0);
        if max_iter == 0 {
            self.posterior.copy_from_slice(channel);
            let hard = self.hard_decision();
            let converged = g.is_codeword(&hard);
            return Ok(DecodeOutcome {
                hard,
                converged,
                iterations: 0,
            });
        }
        for it in 1..=max_iter {
            self.check_update();
            self.variable_update(channel);
            let hard = self.hard_decision();
            if g.is_codeword(&hard) {
                return Ok(DecodeOutcome {
                    hard,
                    converged: true,
                    iterations: it,
                });
            }
            if it == max_iter {
                return Ok(DecodeOutcome {
                    hard,
                    converged: false,
                    iterations: it,
                });
            }
        }
        unreachable!()
    }

    fn check_update(&mut self) {
        let g = self.graph;
        for c in 0..g.m {
            let edges = g.check_edges(c);
            let base = edges.start;
            let d = edges.len();
            if d == 0 {
                continue;
            }
            // fwd[i] = Π_{j<i} t_j, bwd[i] = Π_{j>=i} t_j
            for i in 0..d {
                self.t[i] = half_tanh(self.v2c[base + i]);
            }
            self.fwd[0] = 1.0;
            for i in 0..d {
                self.fwd[i + 1] = self.fwd[i] * self.t[i];
            }
            self.bwd[d] = 1.0;
            for i in (0..d).rev() {
                self.bwd[i] = self.bwd[i + 1] * self.t[i];
            }
            for i in 0..d {
                let prod = self.fwd[i] * self.bwd[i + 1];
                let msg = if prod.abs() < 1.0 {
                    twice_atanh(prod)
                } else {
                    self.min_sum_fallback(base, d, i)
                };
                self.c2v[base + i] = msg.clamp(-LLR_CLAMP, LLR_CLAMP);
            }
        }
    }

    fn min_sum_fallback(&self, base: usize, d: usize, skip: usize) -> f64 {
        let mut sign = 1.0;
        let mut min = f64::INFINITY;
        for j in (0..d).filter(|&j| j != skip) {
            let m = self.v2c[base + j];
            if m < 0.0 {
                sign = -sign;
            }
            min = min.min(m.abs());
        }
        sign * min
    }

    fn variable_update(&mut self, channel: &[f64]) {
        let g = self.graph;
        for (v, &ch) in channel.iter().enumerate().take(g.n) {
            let edges = g.var_edges(v);
            let total = ch + edges.iter().map(|&e| self.c2v[e]).sum::<f64>();
            self.posterior[v] = total;
            for &e in edges {
                self.v2c[e] = (total - self.c2v[e]).clamp(-LLR_CLAMP, LLR_CLAMP);
            }
        }
    }

    fn hard_decision(&self) -> BitVector {
        BitVector::from_bools(self.posterior.iter().map(|&l| l < 0.0))
    }
}

/// `tanh(x/2)` through `expm1`, exact to rounding near zero.
#[inline]
fn half_tanh(x: f64) -> f64 {
    let e = expm1(-x.abs());
    let t = -e / (2.0 + e);
    if x < 0.0 {
        -t
    } else {
        t
    }
}

/// `2·atanh(p)` through `log1p`, valid for `|p| < 1`.
#[inline]
fn twice_atanh(p: f64) -> f64 {
    let a = p.abs();
    let l = log1p(2.0 * a / (1.0 - a));
    if p < 0.0 {
        -l
    } else {
        l
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitMatrix;
    use crate::ldpc::LinearCodeLayout;

    fn hamming() -> BitMatrix {
        BitMatrix::from_dense(&[[1u8, 0, 1, 0, 1, 0, 1], [0, 1, 1, 0, 0, 1, 1], [0, 0, 0, 1, 1, 1, 1]]).unwrap()
    }

    fn llrs_for(c: &BitVector, mag: f64) -> Vec<f64> {
        c.iter().map(|b| if b { -mag } else { mag }).collect()
    }

    #[test]
    fn box_plus_primitives_match_std() {
        for i in -400..=400 {
            let x = i as f64 * 0.125;
            assert!((half_tanh(x) - (0.5 * x).tanh()).abs() < 1e-15, "{x}");
            let p = (0.5 * x).tanh() * 0.999;
            assert!(
                (twice_atanh(p) - 2.0 * p.atanh()).abs() < 1e-12 * (1.0 + p.atanh().abs()),
                "{p}"
            );
        }
        assert_eq!(half_tanh(1e-300), 5e-301);
        assert!((twice_atanh(1e-12) - 2e-12).abs() < 1e-27);
    }

    #[test]
    fn noiseless_converges_in_one_iteration() {
        let layout = LinearCodeLayout::wimax_rate_half(24, 0).unwrap();
        let enc = crate::codec::LlpsEncoder::new(layout, false).unwrap();
        let v = BitVector::from_bools((0..288).map(|i| (i * 7) % 3 == 0));
        let c = enc.pas_encode(&v).unwrap();
        let mut dec = BpDecoder::new(enc.layout().graph());
        let out = dec.decode(&llrs_for(c.bits(), LLR_CLAMP), 100).unwrap();
        assert!(out.converged);
        assert_eq!(out.iterations, 1);
        assert_eq!(&out.hard, c.bits());
    }

    #[test]
    fn zero_iterations_returns_channel_decision() {
        let g = TannerGraph::from_matrix(&hamming());
        let mut dec = BpDecoder::new(&g);
        let mut l = vec![2.0; 7];
        l[0] = -2.0;
        let out = dec.decode(&l, 0).unwrap();
        assert!(!out.converged);
        assert_eq!(out.hard, BitVector::unit(7, 0));
    }

    #[test]
    fn rejects_wrong_length() {
        let g = TannerGraph::from_matrix(&hamming());
        let mut dec = BpDecoder::new(&g);
        assert!(dec.decode(&[1.0; 6], 10).is_err());
    }

    // Loopy BP on the 3-row Hamming matrix is not ML for flips on its
    // degree-3 column; the redundant 7-row matrix (all nonzero dual words)
    // defines the same code and is.
    #[test]
    fn hamming_single_error_matches_ml() {
        let h = hamming();
        let dual: Vec<BitVector> = (1u64..8)
            .map(|m| {
                let mut r = BitVector::zeros(7);
                for i in 0..3 {
                    if (m >> i) & 1 == 1 {
                        r ^= h.row(i);
                    }
                }
                r
            })
            .collect();
        let g = TannerGraph::from_matrix(&BitMatrix::from_rows(dual, 7).unwrap());
        let codewords: Vec<BitVector> = (0u64..128)
            .map(|b| BitVector::from_words(vec![b], 7))
            .filter(|c| h.mul_vec_mt(c).unwrap().is_zero())
            .collect();
        assert_eq!(codewords.len(), 16);
        let mut dec = BpDecoder::new(&g);
        for c in &codewords {
            for flip in 0..7 {
                let mut r = c.clone();
                r.flip(flip);
                // ML over equal-magnitude LLRs is minimum Hamming distance
                let ml = codewords.iter().min_by_key(|cw| cw.distance(&r)).unwrap();
                for mag in [1.0, 3.0, LLR_CLAMP] {
                    let out = dec.decode(&llrs_for(&r, mag), 50).unwrap();
                    assert!(out.converged);
                    assert_eq!(&out.hard, ml, "codeword {c:?}, flip {flip}, |L| = {mag}");
                }
            }
        }
    }

    #[test]
    fn unit_scaling_is_identity() {
        let g = TannerGraph::from_matrix(&hamming());
        let mut dec = BpDecoder::new(&g);
        let llr = [0.3, -1.1, 2.0, 0.4, -0.2, 1.7, 0.9];
        let a = dec.decode(&llr, 20).unwrap();
        let scaled: Vec<f64> = llr.iter().map(|l| l * 1.0).collect();
        let b = dec.decode(&scaled, 20).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn negation_complements_decision_when_all_ones_is_codeword() {
        // Hamming code contains the all-one word
        let h = hamming();
        assert!(h.mul_vec_mt(&BitVector::ones(7)).unwrap().is_zero());
        let g = TannerGraph::from_matrix(&h);
        let mut dec = BpDecoder::new(&g);
        let a = dec.decode(&[3.0; 7], 10).unwrap();
        let b = dec.decode(&[-3.0; 7], 10).unwrap();
        assert!(a.hard.is_zero());
        assert_eq!(b.hard, BitVector::ones(7));
    }
}
