//! Small diagnostic reports behind the `sdm-demo` and `code-info` commands.

use std::fmt::Write as _;

use llps_core::gf2::{BitMatrix, BitVector};
use llps_core::ldpc::LinearCodeLayout;
use llps_core::sdm::{CostFunction, SdmSpec, SyndromeLut};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::SimError;
use crate::frame::random_bits;

/// Random `rows × cols` matrix of full row rank.
pub fn random_full_rank(rows: usize, cols: usize, rng: &mut impl Rng) -> BitMatrix {
    loop {
        let r = (0..rows).map(|_| random_bits(rng, cols)).collect();
        let h = BitMatrix::from_rows(r, cols).expect("rows have cols bits");
        if h.rank() == rows {
            return h;
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub syndromes: usize,
    /// Syndromes where the matcher hit the exhaustive minimum for every cost.
    pub agreeing: usize,
    pub text: String,
}

/// Compares the coset matcher against exhaustive search on a random
/// `m × (m + ell)` parity former, for all `2^m` syndromes and three costs.
pub fn sdm_oracle(m: usize, ell: usize, seed: u64) -> Result<OracleReport, SimError> {
    let len = m + ell;
    if m == 0 || len > SyndromeLut::MAX_LEN {
        return Err(SimError::config(
            "sdm-demo",
            format!("need m >= 1 and m + ell <= {}", SyndromeLut::MAX_LEN),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hp = random_full_rank(m, len, &mut rng);
    let p0 = rng.random_range(0.05..0.45);
    let target = random_bits(&mut rng, len);
    let costs = [
        CostFunction::HammingWeight,
        CostFunction::cross_entropy(p0)?,
        CostFunction::pattern_match(target),
    ];
    let sdm = SdmSpec::build(hp.clone(), false)?;
    let luts = costs
        .iter()
        .map(|c| SyndromeLut::build(&hp, c))
        .collect::<Result<Vec<_>, _>>()?;

    let mut text = String::new();
    writeln!(text, "parity former: {m} x {len}, coset dimension {ell}, seed {seed}").unwrap();
    writeln!(
        text,
        "costs: hamming weight, cross entropy (p0 = {p0:.4}), pattern match"
    )
    .unwrap();
    let syndromes = 1usize << m;
    let mut agreeing = 0;
    for i in 0..syndromes {
        let s = BitVector::from_words(vec![i as u64], m);
        let mut ok = true;
        for (cost, lut) in costs.iter().zip(&luts) {
            let p = sdm.match_syndrome(&s, cost)?;
            let valid = hp.mul_vec_mt(&p)? == s;
            let c = cost.eval(&p)?;
            if !valid || (c - lut.min_cost(&s)).abs() > 1e-9 {
                ok = false;
                writeln!(
                    text,
                    "mismatch: syndrome {i:#x}, cost {c} vs oracle {}",
                    lut.min_cost(&s)
                )
                .unwrap();
            }
        }
        agreeing += ok as usize;
    }
    writeln!(text, "oracle agreement: {agreeing}/{syndromes} syndromes").unwrap();
    Ok(OracleReport {
        syndromes,
        agreeing,
        text,
    })
}

fn weight_range(w: &[usize]) -> String {
    match (w.iter().min(), w.iter().max()) {
        (Some(a), Some(b)) if a == b => format!("{a}"),
        (Some(a), Some(b)) => format!("{a}..{b}"),
        _ => "-".into(),
    }
}

/// Dimensions, rank and partition of a layout.
pub fn code_info(layout: &LinearCodeLayout, info_bits: usize) -> String {
    let h = layout.h();
    let mut t = String::new();
    let w = &mut t;
    writeln!(
        w,
        "n = {}, k = {}, m = {}, rank(H) = {}",
        layout.n(),
        layout.k(),
        layout.m(),
        h.rank()
    )
    .unwrap();
    writeln!(
        w,
        "row weights {}, column weights {}",
        weight_range(&h.row_weights()),
        weight_range(&h.column_weights())
    )
    .unwrap();
    writeln!(
        w,
        "ell = {}: H_s is {} x {}, H_p is {} x {}",
        layout.ell(),
        layout.m(),
        layout.systematic_len(),
        layout.m(),
        layout.parity_len()
    )
    .unwrap();
    let perm = layout.parity_perm();
    if perm.is_identity() {
        writeln!(w, "invertible block of H_p: rightmost {} columns", layout.m()).unwrap();
    } else {
        writeln!(
            w,
            "invertible block of H_p: greedy right-to-left choice (not the rightmost {})",
            layout.m()
        )
        .unwrap();
    }
    writeln!(
        w,
        "shortened = {} (positions 0..{}), transmitted = {}",
        layout.shortened(),
        layout.shortened(),
        layout.transmitted_len()
    )
    .unwrap();
    writeln!(
        w,
        "fec rate = {:.6}, effective rate = {:.6}",
        layout.fec_rate(),
        layout.effective_rate()
    )
    .unwrap();
    writeln!(
        w,
        "information bits = {info_bits}, rate = {:.6} bits per channel use",
        info_bits as f64 / layout.transmitted_len() as f64
    )
    .unwrap();
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_demo_agrees() {
        let r = sdm_oracle(6, 3, 1).unwrap();
        assert_eq!((r.agreeing, r.syndromes), (64, 64));
        assert!(r.text.ends_with("oracle agreement: 64/64 syndromes\n"));
    }

    #[test]
    fn demo_rejects_oversize() {
        assert!(sdm_oracle(20, 8, 0).is_err());
        assert!(sdm_oracle(0, 3, 0).is_err());
    }

    #[test]
    fn info_for_dpc_code() {
        let layout = LinearCodeLayout::wimax_rate_half(44, 16).unwrap();
        let t = code_info(&layout, 496);
        assert!(t.contains("n = 1056, k = 528, m = 528, rank(H) = 528"), "{t}");
        assert!(t.contains("rate = 0.469697"), "{t}");
    }
}
