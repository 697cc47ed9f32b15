//! The sampled function `f: {1..N} → [0, 1]` and the XOR oracle `U_f`.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ensemble::DiagonalEnsemble;
use crate::error::{Error, Result};
use crate::registers::{encode_index, MAX_INPUT_SPINS};

type Callable = Box<dyn Fn(usize) -> f64 + Send + Sync>;

enum Source {
    Table(Vec<f64>),
    Callable(Callable),
}

/// A function on `{1..N}` with values in `[0, 1]`, plus a query counter.
///
/// Domains whose length is not a power of two are padded with zeros up to
/// the next power of two (at least 2). The padding does not change the sum,
/// but the mean measured on the ensemble is over the padded domain.
pub struct SampledFunction {
    source: Source,
    true_len: usize,
    padded_len: usize,
    values: OnceLock<Vec<f64>>,
    queries: AtomicU64,
}

impl fmt::Debug for SampledFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledFunction")
            .field(
                "source",
                &match self.source {
                    Source::Table(_) => "table",
                    Source::Callable(_) => "callable",
                },
            )
            .field("true_len", &self.true_len)
            .field("padded_len", &self.padded_len)
            .field("queries", &self.query_count())
            .finish()
    }
}

fn padded_length(len: usize) -> Result<usize> {
    if len == 0 {
        return Err(Error::validation("function table is empty"));
    }
    let padded = len.next_power_of_two().max(2);
    if padded > 1usize << MAX_INPUT_SPINS {
        return Err(Error::Capacity(format!(
            "{len} samples need more than {MAX_INPUT_SPINS} input spins"
        )));
    }
    Ok(padded)
}

/// Table-backed function. Every value must lie in `[0, 1]`.
pub fn load_table(values: &[f64]) -> Result<SampledFunction> {
    SampledFunction::from_table(values.to_vec())
}

impl SampledFunction {
    pub fn from_table(values: Vec<f64>) -> Result<Self> {
        let padded_len = padded_length(values.len())?;
        let bad: Vec<usize> = values
            .iter()
            .enumerate()
            .filter(|(_, v)| !(0.0..=1.0).contains(*v))
            .map(|(i, _)| i + 1)
            .collect();
        if !bad.is_empty() {
            let shown: Vec<String> = bad.iter().take(10).map(|i| i.to_string()).collect();
            return Err(Error::Validation {
                message: format!(
                    "{} value(s) outside [0, 1] at index {}{}",
                    bad.len(),
                    shown.join(","),
                    if bad.len() > 10 { ",..." } else { "" }
                ),
                indices: bad,
            });
        }
        let true_len = values.len();
        Ok(Self {
            source: Source::Table(values),
            true_len,
            padded_len,
            values: OnceLock::new(),
            queries: AtomicU64::new(0),
        })
    }

    /// Function given by a callable on `1..=len`. Values are checked when the
    /// oracle first evaluates them and are memoized afterwards.
    pub fn from_fn<F>(len: usize, f: F) -> Result<Self>
    where
        F: Fn(usize) -> f64 + Send + Sync + 'static,
    {
        Ok(Self {
            source: Source::Callable(Box::new(f)),
            true_len: len,
            padded_len: padded_length(len)?,
            values: OnceLock::new(),
            queries: AtomicU64::new(0),
        })
    }

    /// Pads the domain further so it covers `2^n` inputs.
    pub fn padded_to(mut self, n: u32) -> Result<Self> {
        crate::registers::check_input_spins(n)?;
        let target = 1usize << n;
        if target < self.true_len {
            return Err(Error::validation(format!(
                "{} samples do not fit in n={n} input spins ({target} states)",
                self.true_len
            )));
        }
        if target != self.padded_len {
            self.padded_len = target;
            self.values = OnceLock::new();
        }
        Ok(self)
    }

    /// Number of real samples.
    pub fn true_len(&self) -> usize {
        self.true_len
    }

    /// Domain size after padding, `N = 2^n`.
    pub fn padded_len(&self) -> usize {
        self.padded_len
    }

    /// `n = log2(padded_len)`.
    pub fn input_spins(&self) -> u32 {
        self.padded_len.trailing_zeros()
    }

    /// Number of oracle applications so far.
    pub fn query_count(&self) -> u64 {
        self.queries.load(Ordering::SeqCst)
    }

    /// Charges `count` oracle applications whose outcome is already known.
    ///
    /// Repeated trials of the same run produce the same post-oracle ensemble,
    /// so the simulator replays it and only records the queries.
    pub(crate) fn charge_queries(&self, count: u64) {
        self.queries.fetch_add(count, Ordering::SeqCst);
    }

    /// `f(i)` for `i` in `1..=padded_len`, zero on the padding.
    pub fn value(&self, i: usize) -> Result<f64> {
        if i == 0 || i > self.padded_len {
            return Err(Error::Domain(format!(
                "index {i} outside 1..={}",
                self.padded_len
            )));
        }
        if i > self.true_len {
            return Ok(0.0);
        }
        match &self.source {
            Source::Table(t) => Ok(t[i - 1]),
            Source::Callable(f) => {
                let v = f(i);
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::OracleContract { index: i, value: v });
                }
                Ok(v)
            }
        }
    }

    /// All `padded_len` values, evaluated once and memoized.
    pub fn values(&self) -> Result<&[f64]> {
        if let Some(v) = self.values.get() {
            return Ok(v);
        }
        let evaluated = match &self.source {
            Source::Table(t) => {
                let mut v = t.clone();
                v.resize(self.padded_len, 0.0);
                v
            }
            Source::Callable(_) => (1..=self.padded_len)
                .map(|i| self.value(i))
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(self.values.get_or_init(|| evaluated))
    }

    /// `S_N = Σ f(i)` computed directly from the samples.
    pub fn exact_sum(&self) -> Result<f64> {
        Ok(self.values()?.iter().sum())
    }
}

/// Applies `U_f`: every code becomes `code XOR encode(f(i))`.
///
/// Weights are untouched. Counts as exactly one query.
pub fn apply_oracle(ensemble: &DiagonalEnsemble, f: &SampledFunction) -> Result<DiagonalEnsemble> {
    let spec = ensemble.spec();
    if spec.samples() != f.padded_len() {
        return Err(Error::Domain(format!(
            "ensemble has {} inputs but the function domain has {}",
            spec.samples(),
            f.padded_len()
        )));
    }
    let k = spec.output_spins();
    let values = f.values()?;
    let codes = ensemble
        .code_indices()
        .par_iter()
        .zip(values.par_iter())
        .map(|(&code, &v)| Ok(code ^ encode_index(v, k)?))
        .collect::<Result<Vec<u64>>>()?;
    f.charge_queries(1);
    Ok(ensemble.with_code_indices(codes))
}

/// Oracle queries for one run, the number of repeated trials, and the total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryLedger {
    pub single_run_queries: u64,
    pub trials: u64,
    pub overall_queries: u64,
}

impl QueryLedger {
    pub fn new(single_run_queries: u64, trials: u64) -> Self {
        Self {
            single_run_queries,
            trials,
            overall_queries: single_run_queries.saturating_mul(trials),
        }
    }
}
