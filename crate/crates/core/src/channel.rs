//! Binary input channel with a known BPSK interferer,
//! `y = α·x_b + β·z + w`, and its two demappers.

use alloc::vec::Vec;

use libm::{exp, log, pow, sqrt};

use crate::error::{check_len, Error, Result};
use crate::gf2::BitVector;

/// Saturation applied to every channel LLR.
pub const LLR_CLAMP: f64 = 50.0;

/// Channel amplitudes. `snr_db = 10·log10(α²/σ²)`, `sir_db = 10·log10(β²/α²)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DpcChannelParams {
    pub alpha: f64,
    pub beta: f64,
    pub sigma: f64,
}

impl DpcChannelParams {
    pub fn new(alpha: f64, beta: f64, sigma: f64) -> Result<Self> {
        // written so that NaN fails every comparison
        if !(alpha > 0.0 && sigma > 0.0 && beta >= 0.0) || !(alpha.is_finite() && beta.is_finite() && sigma.is_finite())
        {
            return Err(Error::InvalidParameter("need alpha > 0, sigma > 0, beta >= 0"));
        }
        Ok(DpcChannelParams { alpha, beta, sigma })
    }

    /// `α = 1`, `σ` from the SNR, `β` from the interference strength.
    pub fn from_db(snr_db: f64, sir_db: f64) -> Self {
        DpcChannelParams {
            alpha: 1.0,
            beta: pow(10.0, sir_db / 20.0),
            sigma: pow(10.0, -snr_db / 20.0),
        }
    }

    /// Interference-free channel at the given SNR.
    pub fn without_interference(snr_db: f64) -> Self {
        DpcChannelParams {
            beta: 0.0,
            ..Self::from_db(snr_db, 0.0)
        }
    }

    pub fn snr_db(&self) -> f64 {
        10.0 * libm::log10(self.alpha * self.alpha / (self.sigma * self.sigma))
    }

    pub fn sir_db(&self) -> f64 {
        10.0 * libm::log10(self.beta * self.beta / (self.alpha * self.alpha))
    }
}

/// Symmetric conditional `P_{B|Z}` with `q = P(B=0 | z=−1) = P(B=1 | z=+1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConditionalPbz {
    q: f64,
}

impl ConditionalPbz {
    pub fn new(q: f64) -> Result<Self> {
        if q > 0.0 && q < 1.0 {
            Ok(ConditionalPbz { q })
        } else {
            Err(Error::InvalidParameter("need 0 < q < 1"))
        }
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// `P(B = b | Z = z)` for `z ∈ {−1, +1}`.
    pub fn prob(&self, b: bool, z: i8) -> f64 {
        if b == (z > 0) {
            self.q
        } else {
            1.0 - self.q
        }
    }
}

/// `x_0 = −1`, `x_1 = +1`.
#[inline]
pub fn bpsk_map(bit: bool) -> f64 {
    if bit {
        1.0
    } else {
        -1.0
    }
}

/// `y_i = α·x_{b_i} + β·z_i + σ·n_i` for standard normal samples `n_i`.
pub fn superimpose(b: &BitVector, z: &[i8], params: &DpcChannelParams, normals: &[f64]) -> Result<Vec<f64>> {
    check_len("interferer", b.len(), z.len())?;
    check_len("noise samples", b.len(), normals.len())?;
    z.iter()
        .zip(normals)
        .enumerate()
        .map(|(i, (&zi, &ni))| {
            if zi != 1 && zi != -1 {
                return Err(Error::InvalidInterferer { index: i });
            }
            Ok(params.alpha * bpsk_map(b.get(i)) + params.beta * zi as f64 + params.sigma * ni)
        })
        .collect()
}

#[inline]
fn log_sum_exp(a: f64, b: f64) -> f64 {
    let m = if a > b { a } else { b };
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + log(exp(a - m) + exp(b - m))
}

#[inline]
fn clamp_llr(l: f64) -> f64 {
    l.clamp(-LLR_CLAMP, LLR_CLAMP)
}

/// LLR treating the interferer as an independent uniform nuisance:
/// `p(y|b) = ½[p_W(y − αx_b + β) + p_W(y − αx_b − β)]`.
pub fn llr_int_as_noise(y: f64, params: &DpcChannelParams) -> f64 {
    let DpcChannelParams { alpha, beta, sigma } = *params;
    let s = -0.5 / (sigma * sigma);
    let sq = |d: f64| s * d * d;
    let l0 = log_sum_exp(sq(y + alpha + beta), sq(y + alpha - beta));
    let l1 = log_sum_exp(sq(y - alpha + beta), sq(y - alpha - beta));
    clamp_llr(l0 - l1)
}

/// LLR with the interferer-dependent input distribution:
/// `p(y|b)P(b) = ½·Σ_z p_W(y − αx_b − βz)·P(b|z)`.
pub fn llr_dpc(y: f64, params: &DpcChannelParams, pbz: &ConditionalPbz) -> f64 {
    let DpcChannelParams { alpha, beta, sigma } = *params;
    let s = -0.5 / (sigma * sigma);
    let sq = |d: f64| s * d * d;
    let (lq, lq1) = (log(pbz.q), log(1.0 - pbz.q));
    let l0 = log_sum_exp(lq + sq(y + alpha + beta), lq1 + sq(y + alpha - beta));
    let l1 = log_sum_exp(lq1 + sq(y - alpha + beta), lq + sq(y - alpha - beta));
    clamp_llr(l0 - l1)
}

/// Standard normal density, shared by the rate integrals.
#[inline]
pub(crate) fn log_gauss(d: f64, sigma: f64) -> f64 {
    -0.5 * (d / sigma) * (d / sigma) - log(sigma * sqrt(2.0 * core::f64::consts::PI))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op_point() -> DpcChannelParams {
        DpcChannelParams::from_db(0.585, -5.0)
    }

    #[test]
    fn db_conversions() {
        let p = DpcChannelParams::from_db(3.0, -5.0);
        assert!((p.snr_db() - 3.0).abs() < 1e-12);
        assert!((p.sir_db() + 5.0).abs() < 1e-12);
        assert!((p.beta - 0.562_341_325).abs() < 1e-8);
    }

    #[test]
    fn params_validation() {
        assert!(DpcChannelParams::new(1.0, 0.0, 1.0).is_ok());
        assert!(DpcChannelParams::new(0.0, 0.0, 1.0).is_err());
        assert!(DpcChannelParams::new(1.0, -0.1, 1.0).is_err());
        assert!(DpcChannelParams::new(1.0, 0.1, 0.0).is_err());
        assert!(DpcChannelParams::new(f64::NAN, 0.1, 1.0).is_err());
        assert!(ConditionalPbz::new(0.0).is_err());
        assert!(ConditionalPbz::new(1.0).is_err());
    }

    #[test]
    fn bpsk_and_label_compose_to_identity() {
        assert_eq!(bpsk_map(false), -1.0);
        assert_eq!(bpsk_map(true), 1.0);
        for z in [-1i8, 1] {
            let a = crate::codec::label(&[z]).unwrap();
            assert_eq!(bpsk_map(a.get(0)), z as f64);
        }
    }

    #[test]
    fn superimpose_noiseless_outer_points() {
        let p = DpcChannelParams::new(1.0, 0.5623, 1.0).unwrap();
        let z = [-1i8, 1, 1, -1];
        let b = crate::codec::label(&z).unwrap();
        let y = superimpose(&b, &z, &p, &[0.0; 4]).unwrap();
        for (yi, zi) in y.iter().zip(z) {
            assert!((yi - 1.5623 * zi as f64).abs() < 1e-12);
        }
        assert!(superimpose(&b, &[-1, 1, 2, -1], &p, &[0.0; 4]).is_err());
    }

    #[test]
    fn superimpose_without_interference_is_bpsk_awgn() {
        let p = DpcChannelParams::new(1.0, 0.0, 0.5).unwrap();
        let b = BitVector::from_bits(&[0, 1]);
        let y = superimpose(&b, &[1, -1], &p, &[0.2, -0.4]).unwrap();
        assert_eq!(y, [-1.0 + 0.1, 1.0 - 0.2]);
    }

    #[test]
    fn int_as_noise_symmetry_and_reduction() {
        let p = op_point();
        assert_eq!(llr_int_as_noise(0.0, &p), 0.0);
        for y in [-3.0, -1.2, -0.3, 0.7, 2.5] {
            assert!((llr_int_as_noise(-y, &p) + llr_int_as_noise(y, &p)).abs() < 1e-12);
        }
        let clean = DpcChannelParams::new(1.0, 0.0, 0.8).unwrap();
        for y in [-2.0, -0.5, 0.1, 1.3] {
            let expect = -2.0 * y / 0.64;
            assert!((llr_int_as_noise(y, &clean) - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn dpc_llr_collapses_at_half() {
        let p = op_point();
        let half = ConditionalPbz::new(0.5).unwrap();
        for i in -40..=40 {
            let y = i as f64 * 0.1;
            assert!((llr_dpc(y, &p, &half) - llr_int_as_noise(y, &p)).abs() < 1e-12);
        }
        let q = ConditionalPbz::new(0.6037).unwrap();
        assert!(llr_dpc(0.0, &p, &q).abs() < 1e-12);
    }

    #[test]
    fn dpc_llr_matches_direct_densities() {
        let p = op_point();
        let q = 0.6037;
        let pbz = ConditionalPbz::new(q).unwrap();
        let pdf =
            |d: f64| (-(d * d) / (2.0 * p.sigma * p.sigma)).exp() / (p.sigma * (2.0 * core::f64::consts::PI).sqrt());
        for i in -20..=20 {
            let y = i as f64 * 0.15;
            let (a, b) = (p.alpha, p.beta);
            let num = 0.5 * (q * pdf(y + a + b) + (1.0 - q) * pdf(y + a - b));
            let den = 0.5 * ((1.0 - q) * pdf(y - a + b) + q * pdf(y - a - b));
            let direct = (num / den).ln();
            assert!((llr_dpc(y, &p, &pbz) - direct).abs() < 1e-9, "y = {y}");
        }
    }

    #[test]
    fn llrs_are_clamped() {
        let p = DpcChannelParams::from_db(30.0, -5.0);
        assert_eq!(llr_int_as_noise(-5.0, &p), LLR_CLAMP);
        assert_eq!(llr_dpc(5.0, &p, &ConditionalPbz::new(0.6).unwrap()), -LLR_CLAMP);
    }
}
