//! Flat `key = value` simulation config.
//!
//! ```text
//! # comment
//! scheme = llps-dpc          # or `reference`
//! z = 44                     # builtin WiMAX rate-1/2 lifting, or
//! # alist = path/to/code.alist
//! ell = 16
//! shorten = 0
//! k_info = 496
//! sir_db = -5
//! snr_db = 2.4:0.2:3.4       # start:step:stop, or a comma list
//! q = 0.6037
//! max_iter = 100
//! min_frame_errors = 100
//! max_frames = 1000000
//! seed = 1
//! hv_seed = 0
//! workers = 0                # 0 = all cores
//! timing = on                # `off` writes elapsed_seconds = 0
//! ```
//!
//! Keys may appear in any order; later assignments win. Unset keys take the
//! defaults of the selected scheme. `workers` and `timing` do not affect
//! results and are left out of the digest.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use llps_core::ldpc::LinearCodeLayout;
use llps_core::sdm::MAX_ELL;
use sha2::{Digest, Sha256};

use crate::alist::parse_alist;
use crate::error::SimError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// Uniform systematic encoding, interference treated as noise.
    Reference,
    /// Layered shaping against the known interferer.
    LlpsDpc,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Reference => "reference",
            Scheme::LlpsDpc => "llps-dpc",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "reference" => Some(Scheme::Reference),
            "llps-dpc" => Some(Scheme::LlpsDpc),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CodeSource {
    Builtin { z: usize },
    Alist(PathBuf),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub scheme: Scheme,
    pub code: CodeSource,
    pub shorten: usize,
    pub ell: usize,
    /// `None` means all free systematic positions carry information.
    pub k_info: Option<usize>,
    pub sir_db: f64,
    pub snr_grid: Vec<f64>,
    pub q: f64,
    pub max_iter: usize,
    pub min_frame_errors: u64,
    pub max_frames: u64,
    pub master_seed: u64,
    pub hv_seed: u64,
    pub workers: usize,
    pub timing: bool,
}

const KEYS: &[&str] = &[
    "scheme",
    "z",
    "alist",
    "shorten",
    "ell",
    "k_info",
    "sir_db",
    "snr_db",
    "q",
    "max_iter",
    "min_frame_errors",
    "max_frames",
    "seed",
    "hv_seed",
    "workers",
    "timing",
];

/// One `key = value` assignment and where it came from.
#[derive(Clone, Debug)]
pub struct Assignment {
    pub key: String,
    pub value: String,
    pub origin: String,
}

impl Assignment {
    /// Parses `key=value` from the command line.
    pub fn from_arg(arg: &str) -> Result<Self, SimError> {
        let (k, v) = arg
            .split_once('=')
            .ok_or_else(|| SimError::config("--set", format!("`{arg}` is not key=value")))?;
        Ok(Assignment {
            key: k.trim().to_string(),
            value: v.trim().to_string(),
            origin: format!("--set {}", k.trim()),
        })
    }
}

/// Splits config text into assignments. `origin` names the source in errors.
pub fn parse_assignments(text: &str, origin: &str) -> Result<Vec<Assignment>, SimError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = format!("{origin} line {}", i + 1);
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| SimError::config(&at, format!("expected `key = value`, found `{line}`")))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || v.is_empty() {
            return Err(SimError::config(&at, "empty key or value"));
        }
        out.push(Assignment {
            key: k.to_string(),
            value: v.to_string(),
            origin: at,
        });
    }
    Ok(out)
}

/// Expands `start:step:stop` (inclusive) or `a,b,c` into SNR points.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("`{}` is not a finite number", t.trim()))
    };
    let parts: Vec<&str> = s.split(':').collect();
    let grid = match parts.len() {
        1 => s.split(',').map(num).collect::<Result<Vec<_>, _>>()?,
        3 => {
            let (a, step, b) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
            if step <= 0.0 || b < a {
                return Err("range needs step > 0 and stop >= start".into());
            }
            let count = ((b - a) / step + 1e-9).floor() as usize + 1;
            if count > 100_000 {
                return Err("range has too many points".into());
            }
            // rounding keeps e.g. 0.1 steps free of representation noise
            (0..count)
                .map(|i| ((a + i as f64 * step) * 1e9).round() / 1e9)
                .collect()
        }
        _ => return Err(format!("`{s}` is neither start:step:stop nor a comma list")),
    };
    if grid.is_empty() {
        return Err("empty SNR grid".into());
    }
    Ok(grid)
}

fn parse_on_off(s: &str) -> Result<bool, String> {
    match s {
        "on" | "true" | "1" => Ok(true),
        "off" | "false" | "0" => Ok(false),
        _ => Err(format!("`{s}` is not on/off")),
    }
}

fn parse_num<T: std::str::FromStr>(s: &str) -> Result<T, String> {
    s.parse().map_err(|_| format!("`{s}` is not a valid number"))
}

impl SimConfig {
    /// Parameters of the reference scheme: z = 48 shortened by 66.
    pub fn reference_defaults() -> Self {
        SimConfig {
            scheme: Scheme::Reference,
            code: CodeSource::Builtin { z: 48 },
            shorten: 66,
            ell: 0,
            k_info: None,
            sir_db: -5.0,
            snr_grid: vec![3.2, 3.4, 3.6, 3.8, 4.0],
            q: 0.5,
            max_iter: 100,
            min_frame_errors: 100,
            max_frames: 1_000_000,
            master_seed: 1,
            hv_seed: 0,
            workers: 0,
            timing: true,
        }
    }

    /// Parameters of the dirty-paper scheme: z = 44, ell = 16, 496 info bits.
    pub fn llps_dpc_defaults() -> Self {
        SimConfig {
            scheme: Scheme::LlpsDpc,
            code: CodeSource::Builtin { z: 44 },
            shorten: 0,
            ell: 16,
            k_info: Some(496),
            snr_grid: vec![2.4, 2.6, 2.8, 3.0, 3.2],
            q: 0.6037,
            ..Self::reference_defaults()
        }
    }

    pub fn defaults(scheme: Scheme) -> Self {
        match scheme {
            Scheme::Reference => Self::reference_defaults(),
            Scheme::LlpsDpc => Self::llps_dpc_defaults(),
        }
    }

    /// Reads a config file, then applies `overrides` in order.
    pub fn load(path: &Path, overrides: &[Assignment]) -> Result<Self, SimError> {
        let text = std::fs::read_to_string(path).map_err(|e| SimError::io(path.display().to_string(), e))?;
        let mut all = parse_assignments(&text, &path.display().to_string())?;
        all.extend_from_slice(overrides);
        Self::from_assignments(&all, path.parent())
    }

    /// Builds a config from assignments. The last `scheme` picks the
    /// defaults; relative alist paths resolve against `base`.
    pub fn from_assignments(items: &[Assignment], base: Option<&Path>) -> Result<Self, SimError> {
        for a in items {
            if !KEYS.contains(&a.key.as_str()) {
                return Err(SimError::config(&a.origin, format!("unknown key `{}`", a.key)));
            }
        }
        let scheme = match items.iter().rev().find(|a| a.key == "scheme") {
            Some(a) => Scheme::parse(&a.value).ok_or_else(|| {
                SimError::config(&a.origin, format!("unknown scheme `{}` (reference, llps-dpc)", a.value))
            })?,
            None => Scheme::LlpsDpc,
        };
        let mut cfg = Self::defaults(scheme);
        for a in items {
            cfg.apply(a, base)
                .map_err(|msg| SimError::config(&a.origin, format!("{}: {msg}", a.key)))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply(&mut self, a: &Assignment, base: Option<&Path>) -> Result<(), String> {
        let v = a.value.as_str();
        match a.key.as_str() {
            "scheme" => {}
            "z" => self.code = CodeSource::Builtin { z: parse_num(v)? },
            "alist" => {
                let p = PathBuf::from(v);
                self.code = CodeSource::Alist(match base {
                    Some(b) if p.is_relative() => b.join(p),
                    _ => p,
                });
            }
            "shorten" => self.shorten = parse_num(v)?,
            "ell" => self.ell = parse_num(v)?,
            "k_info" => self.k_info = Some(parse_num(v)?),
            "sir_db" => self.sir_db = parse_num(v)?,
            "snr_db" => self.snr_grid = parse_grid(v)?,
            "q" => self.q = parse_num(v)?,
            "max_iter" => self.max_iter = parse_num(v)?,
            "min_frame_errors" => self.min_frame_errors = parse_num(v)?,
            "max_frames" => self.max_frames = parse_num(v)?,
            "seed" => self.master_seed = parse_num(v)?,
            "hv_seed" => self.hv_seed = parse_num(v)?,
            "workers" => self.workers = parse_num(v)?,
            "timing" => self.timing = parse_on_off(v)?,
            other => return Err(format!("unknown key `{other}`")),
        }
        Ok(())
    }

    /// Checks that do not need the code itself.
    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |msg: &str| Err(SimError::config("validation", msg));
        if self.snr_grid.is_empty() || self.snr_grid.iter().any(|s| !s.is_finite()) {
            return bad("snr_db must be a nonempty list of finite values");
        }
        if !self.sir_db.is_finite() {
            return bad("sir_db must be finite");
        }
        if !(self.q > 0.0 && self.q < 1.0) {
            return bad("q must lie strictly between 0 and 1");
        }
        if self.max_iter == 0 || self.min_frame_errors == 0 || self.max_frames == 0 {
            return bad("max_iter, min_frame_errors and max_frames must be positive");
        }
        if self.ell > MAX_ELL {
            return bad("ell exceeds the coset search limit");
        }
        match self.scheme {
            Scheme::Reference if self.ell != 0 => bad("the reference scheme needs ell = 0"),
            Scheme::LlpsDpc if self.k_info.is_none() => bad("llps-dpc needs k_info"),
            _ => Ok(()),
        }
    }

    /// Builds the partitioned, shortened code and checks the remaining
    /// consistency conditions against it.
    pub fn layout(&self) -> Result<LinearCodeLayout, SimError> {
        let base = match &self.code {
            CodeSource::Builtin { z } => LinearCodeLayout::wimax_rate_half(*z, self.ell)?,
            CodeSource::Alist(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| SimError::io(path.display().to_string(), e))?;
                LinearCodeLayout::partition(parse_alist(&text)?, self.ell)?
            }
        };
        let layout = base.shorten(self.shorten)?;
        let free = layout.systematic_len() - layout.shortened();
        let bad = |msg: String| Err(SimError::config("validation", msg));
        match (self.scheme, self.k_info) {
            (Scheme::Reference, Some(k)) if k != free => {
                bad(format!("reference k_info must equal k - shorten = {free}, got {k}"))
            }
            (Scheme::LlpsDpc, Some(k)) if k > free => bad(format!("k_info = {k} exceeds k - ell - shorten = {free}")),
            (Scheme::LlpsDpc, Some(k)) if free - k > MAX_ELL => bad(format!(
                "outer coset dimension {} exceeds the search limit {MAX_ELL}",
                free - k
            )),
            _ => Ok(layout),
        }
    }

    /// Information bits per frame for a given layout.
    pub fn info_bits(&self, layout: &LinearCodeLayout) -> usize {
        self.k_info.unwrap_or(layout.systematic_len() - layout.shortened())
    }

    /// One `key=value` line per result-affecting setting, in fixed order.
    pub fn canonical(&self) -> Result<String, SimError> {
        let mut s = String::new();
        let w = &mut s;
        writeln!(w, "scheme={}", self.scheme.name()).unwrap();
        match &self.code {
            CodeSource::Builtin { z } => writeln!(w, "code=wimax-1/2:z={z}").unwrap(),
            CodeSource::Alist(p) => {
                let text = std::fs::read(p).map_err(|e| SimError::io(p.display().to_string(), e))?;
                writeln!(w, "code=alist:sha256={}", hex::encode(Sha256::digest(&text))).unwrap();
            }
        }
        writeln!(w, "shorten={}", self.shorten).unwrap();
        writeln!(w, "ell={}", self.ell).unwrap();
        match self.k_info {
            Some(k) => writeln!(w, "k_info={k}").unwrap(),
            None => writeln!(w, "k_info=auto").unwrap(),
        }
        writeln!(w, "sir_db={:?}", self.sir_db).unwrap();
        let grid: Vec<String> = self.snr_grid.iter().map(|v| format!("{v:?}")).collect();
        writeln!(w, "snr_db={}", grid.join(",")).unwrap();
        writeln!(w, "q={:?}", self.q).unwrap();
        writeln!(w, "max_iter={}", self.max_iter).unwrap();
        writeln!(w, "min_frame_errors={}", self.min_frame_errors).unwrap();
        writeln!(w, "max_frames={}", self.max_frames).unwrap();
        writeln!(w, "seed={}", self.master_seed).unwrap();
        writeln!(w, "hv_seed={}", self.hv_seed).unwrap();
        Ok(s)
    }

    /// First 16 hex digits of the SHA-256 of [`canonical`](Self::canonical).
    pub fn digest(&self) -> Result<String, SimError> {
        let full = hex::encode(Sha256::digest(self.canonical()?.as_bytes()));
        Ok(full[..16].to_string())
    }
}
