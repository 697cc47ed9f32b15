use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measurement::{required_trials, NoiseModel, Readout, TrialsRule};

pub const DEFAULT_OUTPUT_SPINS: u32 = 16;
pub const DEFAULT_INTEGRAND_SPINS: u32 = 10;
pub const MAX_SWEEP_CELLS: usize = 10_000;

/// Environment variable holding the default seed.
pub const SEED_ENV: &str = "ENSEMBLE_SUM_SEED";
/// Environment variable holding the directory for relative `--output` paths.
pub const OUTPUT_DIR_ENV: &str = "ENSEMBLE_SUM_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommandKind {
    Sum,
    Integrate,
    Analyze,
    Sweep,
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CommandKind::Sum => "sum",
            CommandKind::Integrate => "integrate",
            CommandKind::Analyze => "analyze",
            CommandKind::Sweep => "sweep",
        })
    }
}

/// `paper` (N²), `parametric` (from the SNR), or an explicit count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(try_from = "String", into = "String")]
pub enum TrialsMode {
    #[default]
    Paper,
    Parametric,
    Explicit(u64),
}

impl TrialsMode {
    /// Trials for an ensemble of `samples` inputs at single-trial `snr`.
    pub fn resolve(self, samples: u64, snr: f64) -> Result<u64> {
        match self {
            TrialsMode::Paper => required_trials(samples, snr, TrialsRule::Paper),
            TrialsMode::Parametric => required_trials(samples, snr, TrialsRule::Parametric),
            TrialsMode::Explicit(n) => Ok(n),
        }
    }
}

impl FromStr for TrialsMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(TrialsMode::Paper),
            "parametric" => Ok(TrialsMode::Parametric),
            other => match other.parse::<u64>() {
                Ok(0) => Err(Error::Parameter("trial count must be >= 1".into())),
                Ok(n) => Ok(TrialsMode::Explicit(n)),
                Err(_) => Err(Error::Usage(format!(
                    "--trials expects paper, parametric or a positive integer, got '{other}'"
                ))),
            },
        }
    }
}

impl fmt::Display for TrialsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrialsMode::Paper => f.write_str("paper"),
            TrialsMode::Parametric => f.write_str("parametric"),
            TrialsMode::Explicit(n) => write!(f, "{n}"),
        }
    }
}

impl TryFrom<String> for TrialsMode {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<TrialsMode> for String {
    fn from(t: TrialsMode) -> String {
        t.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    /// Pretty-printed JSON document.
    Kv,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kv" => Ok(OutputFormat::Kv),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Usage(format!("--format expects kv or csv, got '{other}'"))),
        }
    }
}

/// Grid axes of a sweep. `None` entries mean "natural n" and "ideal readout".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub n: Vec<Option<u32>>,
    pub k: Vec<u32>,
    pub snr: Vec<Option<f64>>,
    pub alpha: Vec<f64>,
}

impl SweepGrid {
    pub fn cell_count(&self) -> usize {
        self.n.len() * self.k.len() * self.snr.len() * self.alpha.len()
    }

    /// Cells in grid order: `n` outermost, then `k`, `snr`, `alpha`.
    pub fn cells(&self) -> Vec<(Option<u32>, u32, Option<f64>, f64)> {
        let mut out = Vec::with_capacity(self.cell_count());
        for &n in &self.n {
            for &k in &self.k {
                for &snr in &self.snr {
                    for &alpha in &self.alpha {
                        out.push((n, k, snr, alpha));
                    }
                }
            }
        }
        out
    }
}

/// Everything needed to reproduce a run. Echoed verbatim in every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub n: Option<u32>,
    pub k: u32,
    pub snr: Option<f64>,
    pub trials: TrialsMode,
    pub alpha: f64,
    pub seed: u64,
    pub input: Option<PathBuf>,
    pub integrand: Option<String>,
    pub interval: Option<[f64; 2]>,
    pub lipschitz: Option<f64>,
    /// Sample count for `analyze`.
    pub samples: Option<u64>,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
    pub grid: Option<SweepGrid>,
}

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        Self {
            command,
            n: None,
            k: DEFAULT_OUTPUT_SPINS,
            snr: None,
            trials: TrialsMode::Paper,
            alpha: 0.0,
            seed: 0,
            input: None,
            integrand: None,
            interval: None,
            lipschitz: None,
            samples: None,
            output: None,
            format: match command {
                CommandKind::Sweep => OutputFormat::Csv,
                _ => OutputFormat::Kv,
            },
            grid: None,
        }
    }

    /// Readout for an ensemble of `samples` inputs.
    pub fn readout(&self, samples: u64) -> Result<Readout> {
        readout_for(self.snr, self.trials, self.seed, samples)
    }
}

pub(crate) fn readout_for(
    snr: Option<f64>,
    trials: TrialsMode,
    seed: u64,
    samples: u64,
) -> Result<Readout> {
    match snr {
        None => Ok(Readout::Ideal),
        Some(s) => {
            let n_e = trials.resolve(samples, s)?;
            Ok(Readout::Noisy(NoiseModel::new(s, seed, n_e)?))
        }
    }
}

/// Parses `a:b`.
pub fn parse_interval(s: &str) -> Result<[f64; 2]> {
    let bad = || Error::Usage(format!("--interval expects a:b, got '{s}'"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    if !(a < b) {
        return Err(Error::Domain(format!("interval {a}:{b} needs a < b")));
    }
    Ok([a, b])
}

/// Parses a comma-separated list where integer items may be ranges `lo..hi`
/// (inclusive).
pub fn parse_u32_list(s: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some((lo, hi)) = item.split_once("..") {
            let lo: u32 = lo.parse().map_err(|_| usage_list(item))?;
            let hi: u32 = hi.parse().map_err(|_| usage_list(item))?;
            if lo > hi {
                return Err(usage_list(item));
            }
            out.extend(lo..=hi);
        } else {
            out.push(item.parse().map_err(|_| usage_list(item))?);
        }
    }
    if out.is_empty() {
        return Err(Error::Usage("empty list".into()));
    }
    Ok(out)
}

/// Comma-separated reals; the token `ideal` stands for "no SNR".
pub fn parse_snr_list(s: &str) -> Result<Vec<Option<f64>>> {
    let out: Vec<Option<f64>> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            if t == "ideal" {
                Ok(None)
            } else {
                t.parse().map(Some).map_err(|_| usage_list(t))
            }
        })
        .collect::<Result<_>>()?;
    if out.is_empty() {
        return Err(Error::Usage("empty list".into()));
    }
    Ok(out)
}

pub fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    let out: Vec<f64> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| usage_list(t)))
        .collect::<Result<_>>()?;
    if out.is_empty() {
        return Err(Error::Usage("empty list".into()));
    }
    Ok(out)
}

fn usage_list(item: &str) -> Error {
    Error::Usage(format!("cannot parse list item '{item}'"))
}
