//! Initialize, query, measure.

use serde::Serialize;

use crate::ensemble::Initialization;
use crate::error::Result;
use crate::measurement::{MeasurementResult, Readout};
use crate::oracle::{apply_oracle, QueryLedger, SampledFunction};
use crate::registers::{decode_code, encode_value, RegisterSpec};

/// Outcome of one summing run, possibly averaged over repeated trials.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumRun {
    pub spec: RegisterSpec,
    pub measurement: MeasurementResult,
    pub ledger: QueryLedger,
    pub true_len: usize,
    pub padded_len: usize,
}

impl SumRun {
    /// Estimated `Σ f_i` over the real samples.
    pub fn sum_estimate(&self) -> f64 {
        self.measurement.sum_estimate
    }

    /// Estimated mean over the real (unpadded) samples.
    pub fn mean_estimate(&self) -> f64 {
        self.measurement.sum_estimate / self.true_len as f64
    }
}

/// Runs the three-step algorithm on `f` with a `k`-spin output register.
///
/// The input register has `log2(f.padded_len())` spins. A noisy readout
/// standing for `N_e` trials charges `N_e` queries to `f`: the post-oracle
/// ensemble is computed once and replayed for the remaining trials.
pub fn run_sum(
    f: &SampledFunction,
    k: u32,
    init: Initialization,
    readout: Readout,
) -> Result<SumRun> {
    let spec = RegisterSpec::new(f.input_spins(), k)?;
    let before = f.query_count();
    let prepared = init.prepare(spec)?;
    let evaluated = apply_oracle(&prepared, f)?;
    let single_run = f.query_count() - before;
    let trials = readout.trials();
    f.charge_queries(single_run * (trials - 1));
    let measurement = readout.measure(&evaluated);
    Ok(SumRun {
        spec,
        measurement,
        ledger: QueryLedger::new(single_run, trials),
        true_len: f.true_len(),
        padded_len: f.padded_len(),
    })
}

/// `S_{N,k} = Σ decode(encode(f(i)))`, computed directly from the samples.
pub fn encoded_sum(f: &SampledFunction, k: u32) -> Result<f64> {
    f.values()?
        .iter()
        .map(|&v| encode_value(v, k).map(decode_code))
        .sum()
}
