use rayon::prelude::*;

use super::config::{CommandKind, RunConfig, DEFAULT_INTEGRAND_SPINS, MAX_SWEEP_CELLS};
use super::input::read_table;
use super::report::{
    render_records, AnalyzeReport, CellRecord, ErrorBudget, IntegralSection, ReferenceSection,
    RegisterSection, ResultSection, RunReport, TrialsSection,
};
use crate::complexity::{
    advantage_regime, search_threshold, summing_threshold, table_row, AlgorithmKind,
    MAGNITUDE_LABEL,
};
use crate::ensemble::Initialization;
use crate::error::{Error, Result};
use crate::integrate::{integrate_with, sample_integrand, BuiltinIntegrand, IntegrandSpec};
use crate::measurement::{f_bar_sigma, required_trials, thermal_error_bound, Readout, TrialsRule};
use crate::oracle::SampledFunction;
use crate::pipeline::{encoded_sum, run_sum, SumRun};
use crate::registers::check_output_spins;

fn check_common(config: &RunConfig) -> Result<()> {
    check_output_spins(config.k)?;
    if let Some(s) = config.snr {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::Parameter(format!("--snr must be finite and > 0, got {s}")));
        }
    }
    if !(config.alpha >= 0.0) || !config.alpha.is_finite() {
        return Err(Error::Parameter(format!("--alpha must be finite and >= 0, got {}", config.alpha)));
    }
    Ok(())
}

fn expect_command(config: &RunConfig, kind: CommandKind) -> Result<()> {
    if config.command != kind {
        return Err(Error::Usage(format!(
            "configuration is for '{}', not '{kind}'",
            config.command
        )));
    }
    Ok(())
}

fn load_input(config: &RunConfig) -> Result<SampledFunction> {
    let path = config
        .input
        .as_ref()
        .ok_or_else(|| Error::Usage("--input <file> is required".into()))?;
    SampledFunction::from_table(read_table(path)?)
}

fn with_register(f: SampledFunction, n: Option<u32>) -> Result<SampledFunction> {
    match n {
        Some(n) => f.padded_to(n),
        None => Ok(f),
    }
}

/// Runs the pipeline for `config` on `f` and assembles the report.
fn summarize(config: &RunConfig, f: &SampledFunction) -> Result<RunReport> {
    let readout = config.readout(f.padded_len() as u64)?;
    let init = Initialization::from_alpha(config.alpha);
    let run = run_sum(f, config.k, init, readout)?;
    report_from_run(config, f, run)
}

fn report_from_run(config: &RunConfig, f: &SampledFunction, run: SumRun) -> Result<RunReport> {
    let k = config.k;
    let init = Initialization::from_alpha(config.alpha);
    let noisy = !run.measurement.noiseless;
    let ideal_same_init = if noisy {
        run_sum(f, k, init, Readout::Ideal)?.measurement
    } else {
        run.measurement.clone()
    };
    let ideal_uniform = if config.alpha == 0.0 {
        ideal_same_init.clone()
    } else {
        run_sum(f, k, Initialization::Uniform, Readout::Ideal)?.measurement
    };

    let n = run.spec.input_spins();
    let precision = run.spec.precision();
    let padded = run.padded_len as f64;
    let exact_sum = f.exact_sum()?;
    let encoded = encoded_sum(f, k)?;
    let thermal_bound_mean = thermal_error_bound(n, config.alpha);
    let complexity = match config.snr {
        Some(s) if run.padded_len >= 2 => Some(advantage_regime(run.padded_len as u64, s)?),
        _ => None,
    };

    Ok(RunReport {
        command: config.command,
        config: config.clone(),
        registers: RegisterSection {
            input_spins: n,
            output_spins: k,
            precision,
            samples_true: run.true_len,
            samples_padded: run.padded_len,
        },
        result: ResultSection {
            sum_estimate: run.sum_estimate(),
            f_bar: run.measurement.f_bar,
            mean_estimate: run.mean_estimate(),
            gamma_norm: run.measurement.gamma_norm.clone(),
            noiseless: run.measurement.noiseless,
            trials: run.measurement.trials,
        },
        error_budget: ErrorBudget {
            encoding_bound_sum: run.true_len as f64 * precision,
            noise_sigma_spin: run.measurement.spin_sigma,
            noise_sigma_sum: padded * f_bar_sigma(k, run.measurement.spin_sigma),
            thermal_bound_mean,
            thermal_bound_sum: padded * thermal_bound_mean,
        },
        reference: ReferenceSection {
            exact_sum,
            encoded_sum: encoded,
            encoding_error: exact_sum - encoded,
            noise_error_sum: run.sum_estimate() - ideal_same_init.sum_estimate,
            thermal_bias_mean: ideal_same_init.f_bar - ideal_uniform.f_bar,
        },
        queries: run.ledger,
        complexity,
        integral: None,
    })
}

/// Sums the table named by `config.input`.
pub fn cmd_sum(config: &RunConfig) -> Result<RunReport> {
    expect_command(config, CommandKind::Sum)?;
    check_common(config)?;
    let f = with_register(load_input(config)?, config.n)?;
    summarize(config, &f)
}

fn integrand_from(config: &RunConfig) -> Result<(BuiltinIntegrand, IntegrandSpec)> {
    let id = config
        .integrand
        .as_deref()
        .ok_or_else(|| Error::Usage("--integrand <id> is required".into()))?;
    let builtin: BuiltinIntegrand = id.parse()?;
    let [a, b] = config.interval.unwrap_or([0.0, 1.0]);
    let mut spec = builtin.build(a, b)?;
    if let Some(l) = config.lipschitz {
        spec = spec.with_lipschitz(l)?;
    }
    Ok((builtin, spec))
}

/// Integrates a built-in integrand over `config.interval`.
pub fn cmd_integrate(config: &RunConfig) -> Result<RunReport> {
    expect_command(config, CommandKind::Integrate)?;
    check_common(config)?;
    let (builtin, spec) = integrand_from(config)?;
    let n = config.n.unwrap_or(DEFAULT_INTEGRAND_SPINS);
    let readout = config.readout(1u64 << n)?;
    let init = Initialization::from_alpha(config.alpha);
    let (estimate, run) = integrate_with(&spec, n, config.k, init, readout)?;
    let f = sample_integrand(&spec, n)?;
    let mut report = report_from_run(config, &f, run)?;

    let (a, b) = spec.interval();
    let thermal_bound = spec.width() * report.error_budget.thermal_bound_mean;
    report.integral = Some(IntegralSection {
        integrand: builtin.to_string(),
        a,
        b,
        value: estimate.value,
        exact: Some(builtin.exact_integral(a, b)),
        riemann_bound: estimate.riemann_bound,
        riemann_bound_validity: if estimate.riemann_bound_valid {
            "holds: (b-a) <= 2".into()
        } else {
            "not guaranteed: (b-a) > 2".into()
        },
        encoding_bound: estimate.encoding_bound,
        noise_bound: estimate.noise_bound,
        thermal_bound,
        total_bound: estimate.total_bound() + thermal_bound,
    });
    Ok(report)
}

/// Query-complexity table, thresholds and verdict for `N` samples at SNR `S`.
pub fn cmd_analyze(config: &RunConfig) -> Result<AnalyzeReport> {
    expect_command(config, CommandKind::Analyze)?;
    let samples = match (config.samples, config.n) {
        (Some(s), _) => s,
        (None, Some(n)) if n < 64 => 1u64 << n,
        (None, Some(n)) => return Err(Error::Capacity(format!("2^{n} samples overflow"))),
        (None, None) => return Err(Error::Usage("--samples <N> or --n <spins> is required".into())),
    };
    let snr = config
        .snr
        .ok_or_else(|| Error::Usage("--snr <S> is required".into()))?;
    let rows = AlgorithmKind::ALL
        .iter()
        .map(|&kind| table_row(kind, samples))
        .collect::<Result<Vec<_>>>()?;
    let advantage = advantage_regime(samples, snr)?;
    Ok(AnalyzeReport {
        command: CommandKind::Analyze,
        config: config.clone(),
        samples,
        snr,
        label: MAGNITUDE_LABEL.to_string(),
        rows,
        summing_threshold: summing_threshold(snr)?,
        search_threshold: if snr > 1.0 { Some(search_threshold(snr)?) } else { None },
        advantage,
        required_trials: TrialsSection {
            paper: required_trials(samples, snr, TrialsRule::Paper)?,
            parametric: required_trials(samples, snr, TrialsRule::Parametric)?,
        },
    })
}

enum SweepSource {
    Table(Vec<f64>),
    Integrand,
}

/// One record per grid cell, in grid order. Cell `i` uses seed `seed + i`.
pub fn cmd_sweep(config: &RunConfig) -> Result<Vec<CellRecord>> {
    expect_command(config, CommandKind::Sweep)?;
    let grid = config
        .grid
        .as_ref()
        .ok_or_else(|| Error::Usage("sweep needs a grid".into()))?;
    let count = grid.cell_count();
    if count > MAX_SWEEP_CELLS {
        return Err(Error::Capacity(format!(
            "sweep grid has {count} cells, the limit is {MAX_SWEEP_CELLS}"
        )));
    }
    let source = match (&config.input, &config.integrand) {
        (Some(path), None) => SweepSource::Table(read_table(path)?),
        (None, Some(_)) => SweepSource::Integrand,
        _ => {
            return Err(Error::Usage(
                "sweep needs exactly one of --input or --integrand".into(),
            ))
        }
    };

    grid.cells()
        .into_par_iter()
        .enumerate()
        .map(|(index, (n, k, snr, alpha))| {
            let mut cell = config.clone();
            cell.grid = None;
            cell.n = n;
            cell.k = k;
            cell.snr = snr;
            cell.alpha = alpha;
            cell.seed = config.seed.wrapping_add(index as u64);
            check_common(&cell)?;
            let f = match &source {
                SweepSource::Table(values) => {
                    with_register(SampledFunction::from_table(values.clone())?, n)?
                }
                SweepSource::Integrand => {
                    let (_, spec) = integrand_from(&cell)?;
                    sample_integrand(&spec, n.unwrap_or(DEFAULT_INTEGRAND_SPINS))?
                }
            };
            let mut record = summarize(&cell, &f)?.to_record();
            record.cell = index;
            Ok(record)
        })
        .collect()
}

/// Runs the configured command and renders its output.
pub fn execute(config: &RunConfig) -> Result<String> {
    match config.command {
        CommandKind::Sum => cmd_sum(config)?.render(config.format),
        CommandKind::Integrate => cmd_integrate(config)?.render(config.format),
        CommandKind::Analyze => cmd_analyze(config)?.render(config.format),
        CommandKind::Sweep => render_records(&cmd_sweep(config)?, config.format),
    }
}
