//! Report documents and their rendering.

use serde::{Deserialize, Serialize};

use super::config::{CommandKind, OutputFormat, RunConfig};
use crate::complexity::{AdvantageReport, ComplexityReport, SearchThreshold};
use crate::error::{Error, Result};
use crate::oracle::QueryLedger;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegisterSection {
    pub input_spins: u32,
    pub output_spins: u32,
    pub precision: f64,
    pub samples_true: usize,
    pub samples_padded: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultSection {
    pub sum_estimate: f64,
    pub f_bar: f64,
    /// `sum_estimate / samples_true`
    pub mean_estimate: f64,
    /// Normalized per-spin signals, spin 1 (LSB) first.
    pub gamma_norm: Vec<f64>,
    pub noiseless: bool,
    pub trials: u64,
}

/// Error terms. Suffixes name the units: `_sum` for the sum, `_mean` for `f̄`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBudget {
    /// `samples_true · δ`: flooring loses less than `δ` per sample.
    pub encoding_bound_sum: f64,
    /// Per-spin standard deviation of `γ̄_j`.
    pub noise_sigma_spin: f64,
    /// Standard deviation of `sum_estimate` from readout noise.
    pub noise_sigma_sum: f64,
    /// `n α / 2`.
    pub thermal_bound_mean: f64,
    pub thermal_bound_sum: f64,
}

/// Directly computed reference values for the same table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceSection {
    /// `S_N`
    pub exact_sum: f64,
    /// `S_{N,k}`
    pub encoded_sum: f64,
    /// `S_N − S_{N,k}`
    pub encoding_error: f64,
    /// `sum_estimate` minus the noise-free estimate from the same initial state.
    pub noise_error_sum: f64,
    /// `f̄′ − f̄`: noise-free thermal mean minus noise-free uniform mean.
    pub thermal_bias_mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralSection {
    pub integrand: String,
    pub a: f64,
    pub b: f64,
    pub value: f64,
    /// Closed form, for built-in integrands.
    pub exact: Option<f64>,
    pub riemann_bound: Option<f64>,
    pub riemann_bound_validity: String,
    pub encoding_bound: f64,
    /// Three standard deviations of the readout noise, in integral units.
    pub noise_bound: f64,
    pub thermal_bound: f64,
    pub total_bound: f64,
}

/// Report of a `sum` or `integrate` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: CommandKind,
    pub config: RunConfig,
    pub registers: RegisterSection,
    pub result: ResultSection,
    pub error_budget: ErrorBudget,
    pub reference: ReferenceSection,
    pub queries: QueryLedger,
    /// Present when an SNR is configured.
    pub complexity: Option<AdvantageReport>,
    pub integral: Option<IntegralSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialsSection {
    pub paper: u64,
    pub parametric: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub command: CommandKind,
    pub config: RunConfig,
    pub samples: u64,
    pub snr: f64,
    pub label: String,
    pub rows: Vec<ComplexityReport>,
    pub summing_threshold: f64,
    pub search_threshold: Option<SearchThreshold>,
    pub advantage: AdvantageReport,
    pub required_trials: TrialsSection,
}

/// One sweep cell, flat for CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub cell: usize,
    pub n: u32,
    pub k: u32,
    pub snr: Option<f64>,
    pub alpha: f64,
    pub trials: u64,
    pub seed: u64,
    pub samples_true: usize,
    pub samples_padded: usize,
    pub precision: f64,
    pub sum_estimate: f64,
    pub f_bar: f64,
    pub mean_estimate: f64,
    pub exact_sum: f64,
    pub encoded_sum: f64,
    pub encoding_error: f64,
    pub encoding_bound_sum: f64,
    pub noise_sigma_sum: f64,
    pub noise_error_sum: f64,
    pub thermal_bias_mean: f64,
    pub thermal_bound_mean: f64,
    pub queries_single_run: u64,
    pub queries_overall: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct IntegralRow<'a> {
    integrand: &'a str,
    a: f64,
    b: f64,
    n: u32,
    k: u32,
    snr: Option<f64>,
    alpha: f64,
    trials: u64,
    seed: u64,
    value: f64,
    exact: Option<f64>,
    riemann_bound: Option<f64>,
    riemann_bound_validity: &'a str,
    encoding_bound: f64,
    noise_bound: f64,
    thermal_bound: f64,
    total_bound: f64,
    queries_overall: u64,
}

impl RunReport {
    /// The report as a sweep-style record (cell 0).
    pub fn to_record(&self) -> CellRecord {
        CellRecord {
            cell: 0,
            n: self.registers.input_spins,
            k: self.registers.output_spins,
            snr: self.config.snr,
            alpha: self.config.alpha,
            trials: self.result.trials,
            seed: self.config.seed,
            samples_true: self.registers.samples_true,
            samples_padded: self.registers.samples_padded,
            precision: self.registers.precision,
            sum_estimate: self.result.sum_estimate,
            f_bar: self.result.f_bar,
            mean_estimate: self.result.mean_estimate,
            exact_sum: self.reference.exact_sum,
            encoded_sum: self.reference.encoded_sum,
            encoding_error: self.reference.encoding_error,
            encoding_bound_sum: self.error_budget.encoding_bound_sum,
            noise_sigma_sum: self.error_budget.noise_sigma_sum,
            noise_error_sum: self.reference.noise_error_sum,
            thermal_bias_mean: self.reference.thermal_bias_mean,
            thermal_bound_mean: self.error_budget.thermal_bound_mean,
            queries_single_run: self.queries.single_run_queries,
            queries_overall: self.queries.overall_queries,
        }
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match (format, &self.integral) {
            (OutputFormat::Kv, _) => to_json(self),
            (OutputFormat::Csv, None) => to_csv(std::slice::from_ref(&self.to_record())),
            (OutputFormat::Csv, Some(i)) => to_csv(&[IntegralRow {
                integrand: &i.integrand,
                a: i.a,
                b: i.b,
                n: self.registers.input_spins,
                k: self.registers.output_spins,
                snr: self.config.snr,
                alpha: self.config.alpha,
                trials: self.result.trials,
                seed: self.config.seed,
                value: i.value,
                exact: i.exact,
                riemann_bound: i.riemann_bound,
                riemann_bound_validity: &i.riemann_bound_validity,
                encoding_bound: i.encoding_bound,
                noise_bound: i.noise_bound,
                thermal_bound: i.thermal_bound,
                total_bound: i.total_bound,
                queries_overall: self.queries.overall_queries,
            }]),
        }
    }
}

impl AnalyzeReport {
    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Kv => to_json(self),
            OutputFormat::Csv => {
                #[derive(Serialize)]
                struct Row<'a> {
                    kind: String,
                    samples: u64,
                    single_run: f64,
                    trials: f64,
                    overall: f64,
                    sensitivity_scaling: String,
                    label: &'a str,
                }
                let rows: Vec<Row> = self
                    .rows
                    .iter()
                    .map(|r| Row {
                        kind: r.kind.to_string(),
                        samples: r.samples,
                        single_run: r.single_run,
                        trials: r.trials,
                        overall: r.overall,
                        sensitivity_scaling: r.sensitivity_scaling.to_string(),
                        label: &r.label,
                    })
                    .collect();
                to_csv(&rows)
            }
        }
    }
}

pub fn render_records(records: &[CellRecord], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Kv => to_json(&records),
        OutputFormat::Csv => to_csv(records),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Io(format!("cannot serialize report: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)
            .map_err(|e| Error::Io(format!("cannot write csv: {e}")))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Io(format!("cannot write csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}
