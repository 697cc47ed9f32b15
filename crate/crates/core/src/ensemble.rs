//! Diagonal mixed states of the joint input ⊗ output register.
//!
//! Only the diagonal is stored: one weight and one output code per input
//! index. Off-diagonal terms do not exist in this representation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::registers::{OutputCode, RegisterSpec};

const TRACE_TOLERANCE: f64 = 1e-12;

/// Weighted subensembles, one per input index `i = 1..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalEnsemble {
    spec: RegisterSpec,
    weights: Vec<f64>,
    codes: Vec<u64>,
}

impl DiagonalEnsemble {
    /// Validates and assembles an ensemble from raw parts.
    ///
    /// `codes[i - 1]` is the output code index of subensemble `i`.
    pub fn from_parts(spec: RegisterSpec, weights: Vec<f64>, codes: Vec<u64>) -> Result<Self> {
        let n = spec.samples();
        if weights.len() != n || codes.len() != n {
            return Err(Error::Domain(format!(
                "expected {n} entries, got {} weights and {} codes",
                weights.len(),
                codes.len()
            )));
        }
        let negative: Vec<usize> = weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !(**w >= 0.0))
            .map(|(i, _)| i + 1)
            .collect();
        if !negative.is_empty() {
            return Err(Error::Validation {
                message: "weights must be non-negative".into(),
                indices: negative,
            });
        }
        let trace: f64 = weights.iter().sum();
        if (trace - 1.0).abs() > TRACE_TOLERANCE {
            return Err(Error::ModelValidity(format!("trace is {trace}, not 1")));
        }
        let top = spec.code_count() - 1;
        if let Some(i) = codes.iter().position(|&c| c > top) {
            return Err(Error::Domain(format!(
                "code of entry {} does not fit in {} spins",
                i + 1,
                spec.output_spins()
            )));
        }
        Ok(Self {
            spec,
            weights,
            codes,
        })
    }

    pub fn spec(&self) -> RegisterSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Weight of subensemble `i` (1-based).
    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i - 1]
    }

    /// Output code of subensemble `i` (1-based).
    pub fn code(&self, i: usize) -> OutputCode {
        OutputCode::from_index(self.codes[i - 1], self.spec.output_spins())
            .expect("codes are validated on construction")
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn code_indices(&self) -> &[u64] {
        &self.codes
    }

    /// `(i, w_i, code_i)` for every subensemble.
    pub fn entries(&self) -> impl Iterator<Item = (usize, f64, OutputCode)> + '_ {
        let k = self.spec.output_spins();
        self.weights
            .iter()
            .zip(&self.codes)
            .enumerate()
            .map(move |(i, (&w, &c))| {
                (i + 1, w, OutputCode::from_index(c, k).expect("validated"))
            })
    }

    pub fn trace(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Same weights, new codes. Used by the oracle.
    pub(crate) fn with_code_indices(&self, codes: Vec<u64>) -> Self {
        debug_assert_eq!(codes.len(), self.codes.len());
        Self {
            spec: self.spec,
            weights: self.weights.clone(),
            codes,
        }
    }
}

/// Equal weights `1/N` with every output register set to zero.
pub fn init_uniform(spec: RegisterSpec) -> DiagonalEnsemble {
    let n = spec.samples();
    DiagonalEnsemble {
        spec,
        weights: vec![1.0 / n as f64; n],
        codes: vec![0; n],
    }
}

/// Net spin count `χ_i = #up − #down = n − 2·popcount(i − 1)`.
///
/// Entry `i - 1` of the result holds `χ_i`.
pub fn deviation_coefficients(n: u32) -> Vec<i32> {
    let samples = 1usize << n;
    (0..samples)
        .map(|v| n as i32 - 2 * v.count_ones() as i32)
        .collect()
}

/// Parameters of a high-temperature thermal initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalParams {
    pub alpha: f64,
    pub chi: Vec<i32>,
}

impl ThermalParams {
    pub fn new(n: u32, alpha: f64) -> Result<Self> {
        if !(alpha >= 0.0) || !alpha.is_finite() {
            return Err(Error::Parameter(format!("alpha must be finite and >= 0, got {alpha}")));
        }
        if alpha * n as f64 >= 1.0 {
            return Err(Error::ModelValidity(format!(
                "alpha*n = {} >= 1 would give negative subensemble weights",
                alpha * n as f64
            )));
        }
        Ok(Self {
            alpha,
            chi: deviation_coefficients(n),
        })
    }
}

/// Thermal state `w_i = (1 + α χ_i) / N` with zeroed output registers.
pub fn init_thermal(spec: RegisterSpec, alpha: f64) -> Result<DiagonalEnsemble> {
    let params = ThermalParams::new(spec.input_spins(), alpha)?;
    let n = spec.samples() as f64;
    let weights = params
        .chi
        .iter()
        .map(|&chi| (1.0 + alpha * f64::from(chi)) / n)
        .collect();
    Ok(DiagonalEnsemble {
        spec,
        weights,
        codes: vec![0; spec.samples()],
    })
}

/// How the input register is prepared before the oracle is applied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Initialization {
    #[default]
    Uniform,
    Thermal { alpha: f64 },
}

impl Initialization {
    pub fn from_alpha(alpha: f64) -> Self {
        if alpha == 0.0 {
            Initialization::Uniform
        } else {
            Initialization::Thermal { alpha }
        }
    }

    pub fn alpha(&self) -> f64 {
        match *self {
            Initialization::Uniform => 0.0,
            Initialization::Thermal { alpha } => alpha,
        }
    }

    pub fn prepare(&self, spec: RegisterSpec) -> Result<DiagonalEnsemble> {
        match *self {
            Initialization::Uniform => Ok(init_uniform(spec)),
            Initialization::Thermal { alpha } => init_thermal(spec, alpha),
        }
    }
}
