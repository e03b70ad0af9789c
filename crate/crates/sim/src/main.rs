use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use llps_core::channel::DpcChannelParams;
use llps_core::rates::{snr_at_rate, RateIntegrator, DEFAULT_NODES};
use llps_sim::config::{parse_assignments, parse_grid, Assignment};
use llps_sim::demo::{code_info, sdm_oracle};
use llps_sim::harness::Prepared;
use llps_sim::output::{fer_csv, rates_csv, rates_sweep};
use llps_sim::{SimConfig, SimError};

/// Linear layered probabilistic shaping: rate curves, FER simulation and
/// code diagnostics.
#[derive(Parser, Debug)]
#[command(name = "llps", version, about)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Config file (`key = value` lines)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Master seed, overrides the config
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads (0 = all cores), overrides the config
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sweep the achievable rates over SNR and write the rates CSV
    Rates {
        /// Interference-to-signal ratio in dB
        #[arg(long, allow_hyphen_values = true)]
        sir: Option<f64>,
        /// SNR grid, `start:step:stop` or a comma list
        #[arg(long, allow_hyphen_values = true)]
        snr: Option<String>,
        /// Integration nodes
        #[arg(long, default_value_t = DEFAULT_NODES)]
        nodes: usize,
    },
    /// Optimize q at one SNR, or at the SNR where the DPC rate hits a target
    Optimize {
        #[arg(long, allow_hyphen_values = true)]
        sir: Option<f64>,
        /// Operating SNR in dB
        #[arg(long, allow_hyphen_values = true, conflicts_with = "rate")]
        snr: Option<f64>,
        /// Target rate; the SNR is found by bisection
        #[arg(long)]
        rate: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_NODES)]
        nodes: usize,
    },
    /// Run a FER simulation and write the FER CSV
    Fer {
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Check the syndrome matcher against exhaustive search on a random code
    SdmDemo {
        #[arg(long, default_value_t = 6)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        ell: usize,
    },
    /// Print rank and partition diagnostics for the configured code
    CodeInfo {
        #[command(flatten)]
        overrides: Overrides,
    },
}

#[derive(Args, Debug)]
struct Overrides {
    /// reference or llps-dpc
    #[arg(long)]
    scheme: Option<String>,
    /// SNR grid, `start:step:stop` or a comma list
    #[arg(long, allow_hyphen_values = true)]
    snr: Option<String>,
    /// Any config key, as key=value (repeatable)
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn arg(key: &str, value: impl ToString, flag: &str) -> Assignment {
    Assignment {
        key: key.into(),
        value: value.to_string(),
        origin: flag.into(),
    }
}

fn load_config(g: &GlobalOpts, o: &Overrides) -> Result<SimConfig, SimError> {
    let mut items = Vec::new();
    if let Some(s) = &o.scheme {
        items.push(arg("scheme", s, "--scheme"));
    }
    if let Some(s) = &o.snr {
        items.push(arg("snr_db", s, "--snr"));
    }
    for s in &o.set {
        items.push(Assignment::from_arg(s)?);
    }
    if let Some(s) = g.seed {
        items.push(arg("seed", s, "--seed"));
    }
    if let Some(w) = g.workers {
        items.push(arg("workers", w, "--workers"));
    }
    match &g.config {
        Some(path) => SimConfig::load(path, &items),
        None => SimConfig::from_assignments(&items, None),
    }
}

/// `sir_db` and `snr_db` from the config file, if one was given.
fn config_value(g: &GlobalOpts, key: &str) -> Result<Option<String>, SimError> {
    let Some(path) = &g.config else {
        return Ok(None);
    };
    let text = fs::read_to_string(path).map_err(|e| SimError::io(path.display().to_string(), e))?;
    let items = parse_assignments(&text, &path.display().to_string())?;
    Ok(items.into_iter().rev().find(|a| a.key == key).map(|a| a.value))
}

fn resolve_sir(g: &GlobalOpts, sir: Option<f64>) -> Result<f64, SimError> {
    if let Some(s) = sir {
        return Ok(s);
    }
    match config_value(g, "sir_db")? {
        Some(v) => v
            .parse()
            .map_err(|_| config_err("sir_db", format!("`{v}` is not a number"))),
        None => Ok(-5.0),
    }
}

fn config_err(origin: &str, msg: String) -> SimError {
    SimError::Config {
        origin: origin.into(),
        msg,
    }
}

fn emit(g: &GlobalOpts, text: &str) -> Result<(), SimError> {
    match &g.out {
        Some(p) => fs::write(p, text).map_err(|e| SimError::io(p.display().to_string(), e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| SimError::io("stdout", e)),
    }
}

fn run(cli: Cli) -> Result<bool, SimError> {
    let g = &cli.global;
    match &cli.command {
        Command::Rates { sir, snr, nodes } => {
            let sir = resolve_sir(g, *sir)?;
            let spec = match snr {
                Some(s) => s.clone(),
                None => config_value(g, "snr_db")?.unwrap_or_else(|| "-3:0.1:7".into()),
            };
            let grid = parse_grid(&spec).map_err(|m| config_err("--snr", m))?;
            let rows = rates_sweep(&RateIntegrator::new(*nodes), sir, &grid)?;
            emit(g, &rates_csv(&rows))?;
        }
        Command::Optimize { sir, snr, rate, nodes } => {
            let sir = resolve_sir(g, *sir)?;
            let integ = RateIntegrator::new(*nodes);
            let snr = match (snr, rate) {
                (Some(s), _) => *s,
                (None, Some(r)) => snr_at_rate(*r, -10.0, 20.0, 1e-6, |s| {
                    integ.optimize_q(&DpcChannelParams::from_db(s, sir)).map(|(_, r)| r)
                })?,
                (None, None) => return Err(config_err("optimize", "give --snr or --rate".into())),
            };
            let params = DpcChannelParams::from_db(snr, sir);
            let (q, r_dpc) = integ.optimize_q(&params)?;
            let r_ian = integ.rate_int_as_noise(&params)?;
            emit(
                g,
                &format!("snr_db = {snr:.6}\nsir_db = {sir}\nq_opt = {q:.6}\nr_dpc = {r_dpc:.6}\nr_int_as_noise = {r_ian:.6}\n"),
            )?;
        }
        Command::Fer { overrides } => {
            let cfg = load_config(g, overrides)?;
            let prepared = Prepared::new(&cfg)?;
            eprintln!(
                "{}: {} information bits, rate {:.6}, digest {}",
                cfg.scheme.name(),
                prepared.info_bits(),
                prepared.rate(),
                prepared.digest()
            );
            let results = prepared.run_with(|r| {
                eprintln!(
                    "snr {:>6.3} dB: {} errors / {} frames, fer {:.3e}, label match {:.4}",
                    r.record.snr_db, r.record.frame_errors, r.record.frames, r.record.fer, r.match_fraction
                );
            })?;
            let records: Vec<_> = results.into_iter().map(|r| r.record).collect();
            emit(g, &fer_csv(&records))?;
        }
        Command::SdmDemo { m, ell } => {
            let report = sdm_oracle(*m, *ell, g.seed.unwrap_or(1))?;
            emit(g, &report.text)?;
            return Ok(report.agreeing == report.syndromes);
        }
        Command::CodeInfo { overrides } => {
            let cfg = load_config(g, overrides)?;
            let layout = cfg.layout()?;
            let info = cfg.info_bits(&layout);
            emit(
                g,
                &format!("scheme: {}\n{}", cfg.scheme.name(), code_info(&layout, info)),
            )?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
