//! Simulator for summing function samples on a mixed-state spin ensemble.
//!
//! A function `f: {1..N} → [0, 1]` is summed in three steps:
//!
//! 1. prepare the `n`-spin input register in an equally weighted (or
//!    thermal) diagonal mixture, with the `k`-spin output register zeroed
//!    ([`ensemble`]);
//! 2. apply the XOR oracle `U_f` once, writing the `k`-bit fixed-point code of
//!    `f(i)` into each subensemble ([`registers`], [`oracle`]);
//! 3. read the averaged per-spin signals, reconstruct the mean `f̄` and the
//!    sum `N f̄` ([`measurement`]).
//!
//! [`complexity`] tabulates query costs against Grover-based summing, and
//! [`integrate`] turns the pipeline into a Riemann-sum integrator. [`cli`]
//! holds the command implementations behind the `ensemble-sum` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod complexity;
pub mod ensemble;
pub mod error;
pub mod integrate;
pub mod measurement;
pub mod oracle;
pub mod pipeline;
pub mod registers;

pub use ensemble::{init_thermal, init_uniform, DiagonalEnsemble, Initialization};
pub use error::{Error, Result};
pub use measurement::{measure_ideal, measure_noisy, MeasurementResult, NoiseModel, Readout};
pub use oracle::{apply_oracle, load_table, QueryLedger, SampledFunction};
pub use pipeline::{run_sum, SumRun};
pub use registers::{decode_code, encode_value, OutputCode, RegisterSpec};
