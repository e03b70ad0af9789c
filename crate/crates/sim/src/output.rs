//! CSV emission. Floats are written with 6 significant digits in the style
//! of C's `%g`.

use std::fmt::Write as _;

use llps_core::channel::DpcChannelParams;
use llps_core::rates::{awgn_capacity, RateIntegrator};

use crate::error::SimError;
use crate::harness::FerRecord;

pub const FER_HEADER: &str = "snr_db,frames,frame_errors,bit_errors,fer,ber,elapsed_seconds,seed,config_digest";
pub const RATES_HEADER: &str = "snr_db,awgn_capacity,r_int_as_noise,r_dpc,q_opt";

/// `%.6g`: fixed notation for exponents in `[-4, 6)`, otherwise scientific,
/// trailing zeros removed.
pub fn fmt_g6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.5e}");
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let prec = (5 - exp) as usize;
        trim_zeros(&format!("{x:.prec$}")).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mant), exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn fer_csv(records: &[FerRecord]) -> String {
    let mut out = String::from(FER_HEADER);
    out.push('\n');
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            fmt_g6(r.snr_db),
            r.frames,
            r.frame_errors,
            r.bit_errors,
            fmt_g6(r.fer),
            fmt_g6(r.ber),
            fmt_g6(r.elapsed_seconds),
            r.seed,
            r.config_digest
        )
        .unwrap();
    }
    out
}

/// One row of the rates sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateRow {
    pub snr_db: f64,
    pub awgn_capacity: f64,
    pub r_int_as_noise: f64,
    pub r_dpc: f64,
    pub q_opt: f64,
}

/// Evaluates both rates over an SNR grid, optimizing `q` at every point.
pub fn rates_sweep(integrator: &RateIntegrator, sir_db: f64, snr_grid: &[f64]) -> Result<Vec<RateRow>, SimError> {
    snr_grid
        .iter()
        .map(|&snr| {
            let params = DpcChannelParams::from_db(snr, sir_db);
            let (q_opt, r_dpc) = integrator.optimize_q(&params)?;
            Ok(RateRow {
                snr_db: snr,
                awgn_capacity: awgn_capacity(snr),
                r_int_as_noise: integrator.rate_int_as_noise(&params)?,
                r_dpc,
                q_opt,
            })
        })
        .collect()
}

pub fn rates_csv(rows: &[RateRow]) -> String {
    let mut out = String::from(RATES_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_g6(r.snr_db),
            fmt_g6(r.awgn_capacity),
            fmt_g6(r.r_int_as_noise),
            fmt_g6(r.r_dpc),
            fmt_g6(r.q_opt)
        )
        .unwrap();
    }
    out
}
