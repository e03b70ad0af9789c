//! Monte Carlo FER measurement over an SNR grid.
//!
//! Frames are simulated in batches on a rayon pool. Results are scanned in
//! frame order and a point stops at the first frame where the error count
//! reaches `min_frame_errors` (or at `max_frames`). Anything computed past
//! that frame is discarded, so records do not depend on the worker count.

use std::time::Instant;

use llps_core::bp::BpDecoder;
use llps_core::channel::{ConditionalPbz, DpcChannelParams};
use llps_core::codec::{DpcEncoder, LlpsEncoder};
use llps_core::ldpc::TannerGraph;
use rayon::prelude::*;

use crate::config::{Scheme, SimConfig};
use crate::error::SimError;
use crate::frame::{frame_rng, llps_dpc_frame, reference_frame, FrameOutcome};

/// Frames handed to the pool per scheduling round, per worker.
const BATCH_PER_WORKER: u64 = 64;

/// Coset tables are stored for coset dimensions up to this size.
const MATERIALIZE_ELL: usize = 16;

/// One row of the FER CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct FerRecord {
    pub snr_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    pub fer: f64,
    pub ber: f64,
    pub elapsed_seconds: f64,
    pub seed: u64,
    pub config_digest: String,
}

/// A record plus telemetry that does not go into the CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct PointResult {
    pub record: FerRecord,
    /// Mean fraction of transmitted bits equal to the interferer label.
    pub match_fraction: f64,
}

enum Encoder {
    Reference(Box<LlpsEncoder>),
    Dpc(Box<DpcEncoder>, ConditionalPbz),
}

/// Everything a run needs, built and checked before the first frame.
pub struct Prepared {
    config: SimConfig,
    encoder: Encoder,
    info_bits: usize,
    transmitted: usize,
    digest: String,
}

impl Prepared {
    pub fn new(config: &SimConfig) -> Result<Self, SimError> {
        config.validate()?;
        let layout = config.layout()?;
        let info_bits = config.info_bits(&layout);
        let transmitted = layout.transmitted_len();
        let encoder = match config.scheme {
            Scheme::Reference => Encoder::Reference(Box::new(LlpsEncoder::new(layout, false)?)),
            Scheme::LlpsDpc => {
                let free = layout.systematic_len() - layout.shortened();
                let materialize = layout.ell() <= MATERIALIZE_ELL && free - info_bits <= MATERIALIZE_ELL;
                let enc = DpcEncoder::new(layout, info_bits, config.hv_seed, materialize)?;
                Encoder::Dpc(Box::new(enc), ConditionalPbz::new(config.q)?)
            }
        };
        Ok(Prepared {
            config: config.clone(),
            encoder,
            info_bits,
            transmitted,
            digest: config.digest()?,
        })
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    pub fn info_bits(&self) -> usize {
        self.info_bits
    }

    /// Information bits per transmitted channel use.
    pub fn rate(&self) -> f64 {
        self.info_bits as f64 / self.transmitted as f64
    }

    pub fn digest(&self) -> &str {
        &self.digest
    }

    fn graph(&self) -> &TannerGraph {
        match &self.encoder {
            Encoder::Reference(e) => e.layout().graph(),
            Encoder::Dpc(e, _) => e.layout().graph(),
        }
    }

    /// Simulates one frame with its own derived generator.
    pub fn frame(&self, snr_db: f64, index: u64, decoder: &mut BpDecoder<'_>) -> Result<FrameOutcome, SimError> {
        let params = DpcChannelParams::from_db(snr_db, self.config.sir_db);
        let mut rng = frame_rng(self.config.master_seed, snr_db, index);
        let it = self.config.max_iter;
        match &self.encoder {
            Encoder::Reference(e) => reference_frame(e, &params, &mut rng, decoder, it),
            Encoder::Dpc(e, pbz) => llps_dpc_frame(e, &params, pbz, &mut rng, decoder, it),
        }
    }

    /// Measures every point of the SNR grid in order.
    pub fn run(&self) -> Result<Vec<PointResult>, SimError> {
        self.run_with(|_| {})
    }

    /// Like [`run`](Self::run), calling `on_point` as each point finishes.
    pub fn run_with(&self, mut on_point: impl FnMut(&PointResult)) -> Result<Vec<PointResult>, SimError> {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if self.config.workers > 0 {
            builder = builder.num_threads(self.config.workers);
        }
        let pool = builder.build().map_err(|e| SimError::Pool(e.to_string()))?;
        let threads = pool.current_num_threads() as u64;
        self.config
            .snr_grid
            .iter()
            .map(|&snr| {
                let r = pool.install(|| self.run_point(snr, threads))?;
                on_point(&r);
                Ok(r)
            })
            .collect()
    }

    fn run_point(&self, snr_db: f64, threads: u64) -> Result<PointResult, SimError> {
        let cfg = &self.config;
        let start = Instant::now();
        let batch = BATCH_PER_WORKER * threads.max(1);
        let (mut frames, mut frame_errors, mut bit_errors, mut agreements) = (0u64, 0u64, 0u64, 0u64);
        'outer: while frames < cfg.max_frames {
            let end = (frames + batch).min(cfg.max_frames);
            let outcomes: Vec<FrameOutcome> = (frames..end)
                .into_par_iter()
                .map_init(|| BpDecoder::new(self.graph()), |dec, i| self.frame(snr_db, i, dec))
                .collect::<Result<_, _>>()?;
            for o in outcomes {
                frames += 1;
                bit_errors += o.bit_errors;
                agreements += o.label_agreements;
                if o.frame_error {
                    frame_errors += 1;
                    if frame_errors >= cfg.min_frame_errors {
                        break 'outer;
                    }
                }
            }
        }
        let elapsed = if cfg.timing { start.elapsed().as_secs_f64() } else { 0.0 };
        Ok(PointResult {
            record: FerRecord {
                snr_db,
                frames,
                frame_errors,
                bit_errors,
                fer: frame_errors as f64 / frames as f64,
                ber: bit_errors as f64 / (frames as f64 * self.info_bits as f64),
                elapsed_seconds: elapsed,
                seed: cfg.master_seed,
                config_digest: self.digest.clone(),
            },
            match_fraction: agreements as f64 / (frames as f64 * self.transmitted as f64),
        })
    }
}

/// Interference-as-noise reference with systematic encoding.
pub fn run_reference(config: &SimConfig) -> Result<Vec<PointResult>, SimError> {
    if config.scheme != Scheme::Reference {
        return Err(SimError::config("scheme", "run_reference needs scheme = reference"));
    }
    Prepared::new(config)?.run()
}

/// Layered shaping against the known interferer.
pub fn run_llps_dpc(config: &SimConfig) -> Result<Vec<PointResult>, SimError> {
    if config.scheme != Scheme::LlpsDpc {
        return Err(SimError::config("scheme", "run_llps_dpc needs scheme = llps-dpc"));
    }
    Prepared::new(config)?.run()
}

/// Runs whichever scheme the config selects.
pub fn run(config: &SimConfig) -> Result<Vec<PointResult>, SimError> {
    Prepared::new(config)?.run()
}
