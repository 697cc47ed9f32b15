//! The `ensemble-sum` command line.
//!
//! Subcommands `sum`, `integrate`, `analyze` and `sweep` build a [`RunConfig`],
//! run it and write the rendered report to `--output` or standard output.
//! Failures print one JSON error record on standard error:
//!
//! ```text
//! {"error":{"code":"E_VALIDATION","exit_code":2,"message":"...","indices":[2]}}
//! ```
//!
//! Exit status is 0 on success, 3 for capacity errors and 2 for all others.

mod commands;
mod config;
mod input;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

pub use commands::{cmd_analyze, cmd_integrate, cmd_sum, cmd_sweep, execute};
pub use config::{
    parse_f64_list, parse_interval, parse_snr_list, parse_u32_list, CommandKind, OutputFormat,
    RunConfig, SweepGrid, TrialsMode, DEFAULT_INTEGRAND_SPINS, DEFAULT_OUTPUT_SPINS,
    MAX_SWEEP_CELLS, OUTPUT_DIR_ENV, SEED_ENV,
};
pub use input::{parse_json_table, parse_text_table, read_table};
pub use report::{
    render_records, AnalyzeReport, CellRecord, ErrorBudget, IntegralSection, ReferenceSection,
    RegisterSection, ResultSection, RunReport, TrialsSection,
};

use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "ensemble-sum", version, about = "Mixed-state ensemble summing simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sum a function table through the ensemble pipeline.
    Sum(SumArgs),
    /// Integrate a built-in integrand on an interval.
    Integrate(IntegrateArgs),
    /// Query-complexity table and advantage thresholds.
    Analyze(AnalyzeArgs),
    /// Run a grid over n, k, snr and alpha and emit one record per cell.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// RNG seed (default: $ENSEMBLE_SUM_SEED or 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Output file (relative paths resolve against $ENSEMBLE_SUM_OUTPUT_DIR).
    #[arg(long)]
    output: Option<PathBuf>,
    /// kv (JSON document) or csv.
    #[arg(long)]
    format: Option<String>,
    /// Re-run the configuration echoed in a previous report (or a bare config).
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReadoutArgs {
    /// Input spins; pads the domain up to 2^n.
    #[arg(long)]
    n: Option<u32>,
    /// Output spins (precision 2^-k).
    #[arg(long)]
    k: Option<u32>,
    /// Single-trial signal-to-noise ratio; omit for an ideal readout.
    #[arg(long)]
    snr: Option<f64>,
    /// paper | parametric | <count>
    #[arg(long)]
    trials: Option<String>,
    /// Boltzmann factor of a thermal initial state (0 = uniform).
    #[arg(long)]
    alpha: Option<f64>,
}

#[derive(Debug, Args)]
struct SumArgs {
    /// Function table: one value per line, or a JSON array.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    readout: ReadoutArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct IntegrandArgs {
    /// linear | quadratic | sine | constant:<c>
    #[arg(long)]
    integrand: Option<String>,
    /// Interval as a:b (default 0:1).
    #[arg(long, allow_hyphen_values = true)]
    interval: Option<String>,
    /// Lipschitz constant of the integrand.
    #[arg(long)]
    lipschitz: Option<f64>,
}

#[derive(Debug, Args)]
struct IntegrateArgs {
    #[command(flatten)]
    integrand: IntegrandArgs,
    #[command(flatten)]
    readout: ReadoutArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Number of samples N.
    #[arg(long)]
    samples: Option<u64>,
    /// Input spins; N = 2^n when --samples is absent.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    /// Single-trial signal-to-noise ratio.
    #[arg(long)]
    snr: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Function table swept instead of an integrand.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    integrand: IntegrandArgs,
    /// Input spins, e.g. 4..8 or 6,8 (default: natural size).
    #[arg(long)]
    n: Option<String>,
    /// Output spins, e.g. 4..12 (default 16).
    #[arg(long)]
    k: Option<String>,
    /// SNR values; `ideal` for a noise-free readout (default ideal).
    #[arg(long)]
    snr: Option<String>,
    /// Boltzmann factors (default 0).
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// paper | parametric | <count>, applied to every noisy cell.
    #[arg(long)]
    trials: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

fn default_seed() -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("${SEED_ENV}='{v}' is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn load_config(path: &Path, command: CommandKind, out: &OutputArgs) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::validation(format!("{} is not JSON: {e}", path.display())))?;
    let value = match value.get("config") {
        Some(inner) => inner.clone(),
        None => value,
    };
    let mut config: RunConfig = serde_json::from_value(value)
        .map_err(|e| Error::validation(format!("bad configuration in {}: {e}", path.display())))?;
    if config.command != command {
        return Err(Error::Usage(format!(
            "{} holds a '{}' configuration, not '{command}'",
            path.display(),
            config.command
        )));
    }
    if let Some(o) = &out.output {
        config.output = Some(o.clone());
    }
    if let Some(f) = &out.format {
        config.format = f.parse()?;
    }
    if let Some(s) = out.seed {
        config.seed = s;
    }
    Ok(config)
}

fn base_config(command: CommandKind, out: &OutputArgs) -> Result<RunConfig> {
    let mut config = RunConfig::new(command);
    config.seed = match out.seed {
        Some(s) => s,
        None => default_seed()?,
    };
    config.output = out.output.clone();
    if let Some(f) = &out.format {
        config.format = f.parse()?;
    }
    Ok(config)
}

fn apply_readout(config: &mut RunConfig, r: &ReadoutArgs) -> Result<()> {
    config.n = r.n;
    if let Some(k) = r.k {
        config.k = k;
    }
    config.snr = r.snr;
    if let Some(t) = &r.trials {
        config.trials = t.parse()?;
    }
    if let Some(a) = r.alpha {
        config.alpha = a;
    }
    Ok(())
}

fn apply_integrand(config: &mut RunConfig, i: &IntegrandArgs) -> Result<()> {
    config.integrand = i.integrand.clone();
    config.interval = i.interval.as_deref().map(parse_interval).transpose()?;
    config.lipschitz = i.lipschitz;
    Ok(())
}

fn build_config(command: Command) -> Result<RunConfig> {
    match command {
        Command::Sum(a) => {
            if let Some(p) = &a.out.config {
                return load_config(p, CommandKind::Sum, &a.out);
            }
            let mut c = base_config(CommandKind::Sum, &a.out)?;
            c.input = a.input;
            apply_readout(&mut c, &a.readout)?;
            Ok(c)
        }
        Command::Integrate(a) => {
            if let Some(p) = &a.out.config {
                return load_config(p, CommandKind::Integrate, &a.out);
            }
            let mut c = base_config(CommandKind::Integrate, &a.out)?;
            apply_integrand(&mut c, &a.integrand)?;
            apply_readout(&mut c, &a.readout)?;
            Ok(c)
        }
        Command::Analyze(a) => {
            if let Some(p) = &a.out.config {
                return load_config(p, CommandKind::Analyze, &a.out);
            }
            let mut c = base_config(CommandKind::Analyze, &a.out)?;
            c.samples = a.samples;
            c.n = a.n;
            c.snr = a.snr;
            Ok(c)
        }
        Command::Sweep(a) => {
            if let Some(p) = &a.out.config {
                return load_config(p, CommandKind::Sweep, &a.out);
            }
            let mut c = base_config(CommandKind::Sweep, &a.out)?;
            c.input = a.input;
            apply_integrand(&mut c, &a.integrand)?;
            if let Some(t) = &a.trials {
                c.trials = t.parse()?;
            }
            c.grid = Some(SweepGrid {
                n: match &a.n {
                    Some(s) => parse_u32_list(s)?.into_iter().map(Some).collect(),
                    None => vec![None],
                },
                k: match &a.k {
                    Some(s) => parse_u32_list(s)?,
                    None => vec![DEFAULT_OUTPUT_SPINS],
                },
                snr: match &a.snr {
                    Some(s) => parse_snr_list(s)?,
                    None => vec![None],
                },
                alpha: match &a.alpha {
                    Some(s) => parse_f64_list(s)?,
                    None => vec![0.0],
                },
            });
            Ok(c)
        }
    }
}

fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn write_output(config: &RunConfig, text: &str) -> Result<()> {
    match &config.output {
        Some(path) => {
            let path = resolve_output(path);
            std::fs::write(&path, text)
                .map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// The single-line JSON record printed for a failed run.
pub fn error_record(err: &Error) -> String {
    let indices = match err {
        Error::Validation { indices, .. } => indices.clone(),
        Error::OracleContract { index, .. } => vec![*index],
        _ => Vec::new(),
    };
    let message = err.to_string().replace('\n', " ");
    json!({
        "error": {
            "code": err.code(),
            "exit_code": err.exit_code(),
            "message": message,
            "indices": indices,
        }
    })
    .to_string()
}

/// Entry point of the binary; returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            let first = first.trim_start_matches("error: ");
            eprintln!("{}", error_record(&Error::Usage(first.to_string())));
            return 2;
        }
    };
    let outcome = build_config(cli.command).and_then(|config| {
        let text = execute(&config)?;
        write_output(&config, &text)
    });
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", error_record(&e));
            e.exit_code()
        }
    }
}
