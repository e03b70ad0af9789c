//! Achievable rates of the dirty-paper channel, computed by trapezoidal
//! integration over the received amplitude.
//!
//! For a symmetric conditional `P_{B|Z}` with parameter `q` the marginal
//! `P_B` is uniform and `P_{Z|B} = P_{B|Z}`, so
//! `p(y|b) = Σ_z P_{B|Z}(b|z)·p_W(y − αx_b − βz)`. Interference as noise is
//! the special case `q = ½`.

use libm::{exp, log, log2, pow};

use crate::channel::{log_gauss, DpcChannelParams};
use crate::error::{Error, Result};

const LN2: f64 = core::f64::consts::LN_2;

/// Default trapezoid node count.
pub const DEFAULT_NODES: usize = 8001;
/// Half-width of the integration window in noise standard deviations,
/// beyond the outermost constellation point.
pub const TAIL_SIGMAS: f64 = 10.0;
/// Search interval of the q optimizer.
pub const Q_RANGE: (f64, f64) = (0.5, 0.999);
/// Tolerance on q of the golden-section search.
pub const Q_TOL: f64 = 1e-6;

/// One row of a rate sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatePoint {
    pub snr_db: f64,
    pub awgn_capacity: f64,
    pub r_int_as_noise: f64,
    pub r_dpc: f64,
    pub q_opt: f64,
}

/// `½·log2(1 + SNR)` for Gaussian signaling.
pub fn awgn_capacity(snr_db: f64) -> f64 {
    0.5 * log2(1.0 + pow(10.0, snr_db / 10.0))
}

/// `h₂(p)` in bits.
pub fn binary_entropy(p: f64) -> f64 {
    let term = |x: f64| if x <= 0.0 { 0.0 } else { -x * log2(x) };
    term(p) + term(1.0 - p)
}

#[inline]
fn lse(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    m + log(exp(a - m) + exp(b - m))
}

/// Numerical integrator over `y`.
#[derive(Clone, Copy, Debug)]
pub struct RateIntegrator {
    pub nodes: usize,
}

impl Default for RateIntegrator {
    fn default() -> Self {
        RateIntegrator { nodes: DEFAULT_NODES }
    }
}

/// Entropies in bits of one channel/distribution pair, each from its own
/// integral.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelEntropies {
    /// `h(Y)`
    pub h_y: f64,
    /// `h(Y|B)`
    pub h_y_given_b: f64,
    /// `H(B|Y)`
    pub h_b_given_y: f64,
    /// `∫ p(y) dy`, should be 1
    pub mass: f64,
}

impl ChannelEntropies {
    /// `I(B;Y) = h(Y) − h(Y|B)`.
    pub fn mutual_information(&self) -> f64 {
        self.h_y - self.h_y_given_b
    }
}

/// Residuals of the two identity chains; both should vanish.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChainResiduals {
    /// `|[H(B|Z) − H(B|Y)] − [I(B;Y) − I(B;Z)]|`
    pub dpc: f64,
    /// `|[H(B) − H(B|Y)] − I(B;Y)|`
    pub layered: f64,
}

impl RateIntegrator {
    pub fn new(nodes: usize) -> Self {
        RateIntegrator { nodes }
    }

    pub fn entropies(&self, params: &DpcChannelParams, q: f64) -> Result<ChannelEntropies> {
        let DpcChannelParams { alpha, beta, sigma } = *params;
        if !(q > 0.0 && q < 1.0) || self.nodes < 3 {
            return Err(Error::InvalidParameter("need 0 < q < 1 and at least 3 nodes"));
        }
        let half = alpha + beta + TAIL_SIGMAS * sigma;
        let step = 2.0 * half / (self.nodes - 1) as f64;
        let (lq, lq1) = (log(q), log(1.0 - q));
        let mut acc = ChannelEntropies {
            h_y: 0.0,
            h_y_given_b: 0.0,
            h_b_given_y: 0.0,
            mass: 0.0,
        };
        for i in 0..self.nodes {
            let y = -half + i as f64 * step;
            let w = if i == 0 || i + 1 == self.nodes { 0.5 } else { 1.0 } * step;
            // ln p(y|0), ln p(y|1)
            let l0 = lse(
                lq + log_gauss(y + alpha + beta, sigma),
                lq1 + log_gauss(y + alpha - beta, sigma),
            );
            let l1 = lse(
                lq1 + log_gauss(y - alpha + beta, sigma),
                lq + log_gauss(y - alpha - beta, sigma),
            );
            let ly = lse(l0, l1) - LN2;
            let (p0, p1, py) = (exp(l0), exp(l1), exp(ly));
            acc.mass += w * py;
            acc.h_y -= w * py * ly / LN2;
            acc.h_y_given_b -= w * 0.5 * (p0 * l0 + p1 * l1) / LN2;
            // posterior P(b|y) = ½ p(y|b) / p(y)
            let (lp0, lp1) = (l0 - LN2 - ly, l1 - LN2 - ly);
            acc.h_b_given_y -= w * 0.5 * (p0 * lp0 + p1 * lp1) / LN2;
        }
        if !acc.mass.is_finite() || (acc.mass - 1.0).abs() > 1e-6 {
            return Err(Error::IntegrationFailure {
                mass: acc.mass,
                nodes: self.nodes,
            });
        }
        Ok(acc)
    }

    /// `I(B;Y)` with the interferer independent of the uniform input.
    pub fn rate_int_as_noise(&self, params: &DpcChannelParams) -> Result<f64> {
        Ok(self.entropies(params, 0.5)?.mutual_information().max(0.0))
    }

    /// `[I(B;Y) − I(B;Z)]⁺` with `I(B;Z) = 1 − h₂(q)`.
    pub fn rate_dpc(&self, params: &DpcChannelParams, q: f64) -> Result<f64> {
        let i_by = self.entropies(params, q)?.mutual_information();
        Ok((i_by - (1.0 - binary_entropy(q))).max(0.0))
    }

    /// Golden-section maximization of [`rate_dpc`](Self::rate_dpc) over
    /// `q ∈ [0.5, 0.999]`.
    pub fn optimize_q(&self, params: &DpcChannelParams) -> Result<(f64, f64)> {
        let f = |q: f64| self.rate_dpc_unclamped(params, q);
        let inv_phi = (libm::sqrt(5.0) - 1.0) / 2.0;
        let (mut a, mut b) = Q_RANGE;
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        let (mut fc, mut fd) = (f(c)?, f(d)?);
        while b - a > Q_TOL {
            if fc >= fd {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = f(c)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = f(d)?;
            }
        }
        let q = 0.5 * (a + b);
        Ok((q, self.rate_dpc(params, q)?))
    }

    // the optimizer must see the slope even where the clamped rate is flat at 0
    fn rate_dpc_unclamped(&self, params: &DpcChannelParams, q: f64) -> Result<f64> {
        let i_by = self.entropies(params, q)?.mutual_information();
        Ok(i_by - (1.0 - binary_entropy(q)))
    }

    /// Evaluates both identity chains from independent integrals:
    /// `I(B;Y)` via `h(Y) − h(Y|B)` and `H(B|Y)` via the posterior entropy.
    pub fn entropy_chain_check(&self, params: &DpcChannelParams, q: f64) -> Result<ChainResiduals> {
        let e = self.entropies(params, q)?;
        let i_by = e.mutual_information();
        let h_b = 1.0;
        let h_b_given_z = binary_entropy(q);
        let i_bz = h_b - h_b_given_z;
        Ok(ChainResiduals {
            dpc: ((h_b_given_z - e.h_b_given_y) - (i_by - i_bz)).abs(),
            layered: ((h_b - e.h_b_given_y) - i_by).abs(),
        })
    }

    /// All curves at one SNR.
    pub fn rate_point(&self, snr_db: f64, sir_db: f64) -> Result<RatePoint> {
        let params = DpcChannelParams::from_db(snr_db, sir_db);
        let (q_opt, r_dpc) = self.optimize_q(&params)?;
        Ok(RatePoint {
            snr_db,
            awgn_capacity: awgn_capacity(snr_db),
            r_int_as_noise: self.rate_int_as_noise(&params)?,
            r_dpc,
            q_opt,
        })
    }
}

/// Smallest SNR in `[lo, hi]` where the nondecreasing `rate(snr)` reaches
/// `target`, by bisection to `tol` dB.
pub fn snr_at_rate<F>(target: f64, mut lo: f64, mut hi: f64, tol: f64, mut rate: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if rate(lo)? > target || rate(hi)? < target {
        return Err(Error::InvalidParameter("target rate not bracketed by the SNR interval"));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if rate(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `R = R_fec·I(V;Y) + (1 − R_fec)·I(U;Y)`: the rate of plain systematic
/// shaping, where only the `k` systematic bits are shaped.
pub fn time_sharing_rate(r_fec: f64, i_shaped: f64, i_uniform: f64) -> f64 {
    r_fec * i_shaped + (1.0 - r_fec) * i_uniform
}
