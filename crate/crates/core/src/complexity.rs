//! Query-complexity comparison of ensemble and Grover-based algorithms.
//!
//! All figures are leading-term magnitudes with unit constants.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAGNITUDE_LABEL: &str = "leading-term magnitude (unit constants)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgorithmKind {
    EnsembleSumming,
    EnsembleSearch,
    GroverPseudopure,
    GroverPure,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 4] = [
        AlgorithmKind::EnsembleSumming,
        AlgorithmKind::EnsembleSearch,
        AlgorithmKind::GroverPseudopure,
        AlgorithmKind::GroverPure,
    ];
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgorithmKind::EnsembleSumming => "ensemble_summing",
            AlgorithmKind::EnsembleSearch => "ensemble_search",
            AlgorithmKind::GroverPseudopure => "grover_pseudopure",
            AlgorithmKind::GroverPure => "grover_pure",
        })
    }
}

/// How the required measurement sensitivity scales with `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SensitivityScaling {
    #[serde(rename = "1/N")]
    InverseN,
    #[serde(rename = "1")]
    Constant,
}

impl fmt::Display for SensitivityScaling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SensitivityScaling::InverseN => "1/N",
            SensitivityScaling::Constant => "1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexityReport {
    pub kind: AlgorithmKind,
    pub samples: u64,
    pub single_run: f64,
    pub trials: f64,
    pub overall: f64,
    pub sensitivity_scaling: SensitivityScaling,
    pub label: String,
}

/// One column of the comparison, instantiated at `samples`.
pub fn table_row(kind: AlgorithmKind, samples: u64) -> Result<ComplexityReport> {
    if samples < 2 {
        return Err(Error::Parameter(format!("need N >= 2, got {samples}")));
    }
    let n = samples as f64;
    let (single_run, trials, sensitivity_scaling) = match kind {
        AlgorithmKind::EnsembleSumming => (1.0, n * n, SensitivityScaling::InverseN),
        AlgorithmKind::EnsembleSearch => (n.log2(), n * n, SensitivityScaling::InverseN),
        AlgorithmKind::GroverPseudopure => (n.sqrt(), n * n, SensitivityScaling::InverseN),
        AlgorithmKind::GroverPure => (n.sqrt(), 1.0, SensitivityScaling::Constant),
    };
    Ok(ComplexityReport {
        kind,
        samples,
        single_run,
        trials,
        overall: single_run * trials,
        sensitivity_scaling,
        label: MAGNITUDE_LABEL.to_string(),
    })
}

fn check_snr(snr: f64) -> Result<()> {
    if !(snr > 0.0) || !snr.is_finite() {
        return Err(Error::Parameter(format!("snr must be finite and > 0, got {snr}")));
    }
    Ok(())
}

/// Largest `N` with `N√N < S²`, i.e. `S^(4/3)`.
pub fn summing_threshold(snr: f64) -> Result<f64> {
    check_snr(snr)?;
    Ok(snr.powf(4.0 / 3.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchThreshold {
    pub n_max: f64,
    /// False when `n_max < 2`: no database size benefits.
    pub advantage_possible: bool,
}

fn search_lhs(n: f64) -> f64 {
    n * n.sqrt() * n.log2()
}

/// Solves `N√N log₂N = S²` for `N ≥ 1` by bisection (relative tolerance 1e-9).
pub fn search_threshold(snr: f64) -> Result<SearchThreshold> {
    check_snr(snr)?;
    if snr <= 1.0 {
        return Err(Error::Parameter(format!("search threshold needs snr > 1, got {snr}")));
    }
    let target = snr * snr;
    let mut lo = 1.0f64;
    let mut hi = 2.0f64;
    while search_lhs(hi) < target {
        lo = hi;
        hi *= 2.0;
    }
    while (hi - lo) > 1e-9 * lo {
        let mid = 0.5 * (lo + hi);
        if search_lhs(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let n_max = 0.5 * (lo + hi);
    Ok(SearchThreshold {
        n_max,
        advantage_possible: n_max >= 2.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    EnsembleAdvantage,
    NoAdvantage,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdvantageReport {
    pub verdict: Verdict,
    pub samples: u64,
    pub snr: f64,
    /// `N√N`
    pub lhs: f64,
    /// `S²`
    pub rhs: f64,
    pub summing_threshold: f64,
    pub search_threshold: Option<SearchThreshold>,
}

/// Whether ensemble summing beats pure-state Grover at this `N` and SNR.
///
/// Strict: `N√N == S²` is not an advantage.
pub fn advantage_regime(samples: u64, snr: f64) -> Result<AdvantageReport> {
    if samples < 2 {
        return Err(Error::Parameter(format!("need N >= 2, got {samples}")));
    }
    check_snr(snr)?;
    let n = samples as f64;
    let lhs = n * n.sqrt();
    let rhs = snr * snr;
    let verdict = if lhs < rhs {
        Verdict::EnsembleAdvantage
    } else {
        Verdict::NoAdvantage
    };
    Ok(AdvantageReport {
        verdict,
        samples,
        snr,
        lhs,
        rhs,
        summing_threshold: summing_threshold(snr)?,
        search_threshold: if snr > 1.0 {
            Some(search_threshold(snr)?)
        } else {
            None
        },
    })
}
