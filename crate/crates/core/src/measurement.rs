//! Ensemble-averaged readout of the output register.
//!
//! Each output spin `j` yields a signal `γ_j` proportional to the total weight
//! of subensembles whose spin `j` is set. Dividing by the calibration signal
//! `Γ_j` (every subensemble set) gives the fraction `γ̄_j ∈ [0, 1]`, and
//! `f̄ = 2^-k Σ_j 2^(j-1) γ̄_j`.
//!
//! Noise is modelled as one Gaussian draw per spin on `γ̄_j` with standard
//! deviation `(1/S)/√N_e`, which is what `N_e` averaged trials at single-trial
//! SNR `S` produce. Each spin draws from its own ChaCha stream derived from
//! the master seed and the spin index.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::ensemble::DiagonalEnsemble;
use crate::error::{Error, Result};

/// Single-trial signal-to-noise ratio, RNG seed and number of averaged trials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawNoiseModel")]
pub struct NoiseModel {
    snr: f64,
    seed: u64,
    trials: u64,
}

impl NoiseModel {
    /// `snr` may be `+∞` (noise-free readout); it must be positive.
    pub fn new(snr: f64, seed: u64, trials: u64) -> Result<Self> {
        if !(snr > 0.0) {
            return Err(Error::Parameter(format!("snr must be > 0, got {snr}")));
        }
        if trials == 0 {
            return Err(Error::Parameter("trial count must be >= 1".into()));
        }
        Ok(Self { snr, seed, trials })
    }

    pub fn snr(&self) -> f64 {
        self.snr
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    /// Per-spin noise after averaging, `(1/S)/√N_e`.
    pub fn sigma(&self) -> f64 {
        (1.0 / self.snr) / (self.trials as f64).sqrt()
    }
}

#[derive(Deserialize)]
struct RawNoiseModel {
    snr: f64,
    seed: u64,
    trials: u64,
}

impl TryFrom<RawNoiseModel> for NoiseModel {
    type Error = Error;

    fn try_from(raw: RawNoiseModel) -> Result<Self> {
        NoiseModel::new(raw.snr, raw.seed, raw.trials)
    }
}

/// Ideal or noisy readout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Readout {
    #[default]
    Ideal,
    Noisy(NoiseModel),
}

impl Readout {
    pub fn measure(&self, ensemble: &DiagonalEnsemble) -> MeasurementResult {
        match self {
            Readout::Ideal => measure_ideal(ensemble),
            Readout::Noisy(noise) => measure_with(ensemble, noise),
        }
    }

    /// Number of experimental trials this readout stands for.
    pub fn trials(&self) -> u64 {
        match self {
            Readout::Ideal => 1,
            Readout::Noisy(n) => n.trials(),
        }
    }

    /// Per-spin standard deviation of `γ̄_j`.
    pub fn spin_sigma(&self) -> f64 {
        match self {
            Readout::Ideal => 0.0,
            Readout::Noisy(n) => n.sigma(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementResult {
    /// `γ̄_1 .. γ̄_k`, spin 1 first.
    pub gamma_norm: Vec<f64>,
    pub f_bar: f64,
    /// `N · f̄` with `N` the (padded) ensemble size.
    pub sum_estimate: f64,
    pub trials: u64,
    pub noiseless: bool,
    /// Standard deviation applied to each `γ̄_j`.
    pub spin_sigma: f64,
}

/// `f̄ = 2^-k Σ_j 2^(j-1) γ̄_j`.
pub fn ensemble_average(gamma_norm: &[f64]) -> f64 {
    let k = gamma_norm.len() as i32;
    let weighted: f64 = gamma_norm
        .iter()
        .enumerate()
        .map(|(j, g)| 2f64.powi(j as i32) * g)
        .sum();
    weighted * 2f64.powi(-k)
}

/// Standard deviation of `f̄` when every `γ̄_j` carries independent noise
/// `spin_sigma`: `σ · sqrt(Σ_j 4^(j-1)) / 2^k`.
pub fn f_bar_sigma(k: u32, spin_sigma: f64) -> f64 {
    let sum_sq: f64 = (0..k as i32).map(|j| 4f64.powi(j)).sum();
    spin_sigma * sum_sq.sqrt() * 2f64.powi(-(k as i32))
}

/// Raw per-spin signals `γ_j` and the calibration signal `Γ`.
fn spin_signals(ensemble: &DiagonalEnsemble) -> (Vec<f64>, f64) {
    let k = ensemble.spec().output_spins() as usize;
    let mut gamma = vec![0.0; k];
    for (&w, &code) in ensemble.weights().iter().zip(ensemble.code_indices()) {
        let mut bits = code;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            gamma[j] += w;
            bits &= bits - 1;
        }
    }
    // every spin set in every subensemble gives the full trace
    let calibration = ensemble.trace();
    (gamma, calibration)
}

fn finish(ensemble: &DiagonalEnsemble, gamma_norm: Vec<f64>, trials: u64, sigma: f64) -> MeasurementResult {
    let f_bar = ensemble_average(&gamma_norm);
    MeasurementResult {
        sum_estimate: f_bar * ensemble.len() as f64,
        f_bar,
        gamma_norm,
        trials,
        noiseless: sigma == 0.0,
        spin_sigma: sigma,
    }
}

/// Noise-free readout.
pub fn measure_ideal(ensemble: &DiagonalEnsemble) -> MeasurementResult {
    let (gamma, calibration) = spin_signals(ensemble);
    let gamma_norm = gamma.into_iter().map(|g| g / calibration).collect();
    finish(ensemble, gamma_norm, 1, 0.0)
}

/// Readout with Gaussian noise on each normalized signal, clamped to `[0, 1]`.
///
/// Deterministic in `(seed, trials, snr)`.
pub fn measure_noisy(ensemble: &DiagonalEnsemble, noise: &NoiseModel) -> Result<MeasurementResult> {
    Ok(measure_with(ensemble, noise))
}

fn measure_with(ensemble: &DiagonalEnsemble, noise: &NoiseModel) -> MeasurementResult {
    let (gamma, calibration) = spin_signals(ensemble);
    let sigma = noise.sigma();
    let gamma_norm = gamma
        .into_iter()
        .enumerate()
        .map(|(j, g)| {
            let ideal = g / calibration;
            let mut rng = spin_stream(noise.seed, j as u64);
            let z: f64 = StandardNormal.sample(&mut rng);
            (ideal + sigma * z).clamp(0.0, 1.0)
        })
        .collect();
    finish(ensemble, gamma_norm, noise.trials, sigma)
}

fn spin_stream(seed: u64, spin: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(spin);
    rng
}

/// How many trials to average before single-sample differences are visible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialsRule {
    /// `N²` trials regardless of the SNR.
    Paper,
    /// Smallest `N_e` with `(1/S)/√N_e ≤ 1/(2N)`.
    Parametric,
}

/// Trials needed for a sum over `samples` points at single-trial SNR `snr`.
pub fn required_trials(samples: u64, snr: f64, rule: TrialsRule) -> Result<u64> {
    if samples == 0 {
        return Err(Error::Parameter("sample count must be >= 1".into()));
    }
    if !(snr > 0.0) {
        return Err(Error::Parameter(format!("snr must be > 0, got {snr}")));
    }
    Ok(match rule {
        TrialsRule::Paper => samples.saturating_mul(samples),
        TrialsRule::Parametric => {
            let ratio = 2.0 * samples as f64 / snr;
            let needed = (ratio * ratio).ceil();
            if needed >= u64::MAX as f64 {
                u64::MAX
            } else {
                (needed as u64).max(1)
            }
        }
    })
}

/// Worst-case shift of `f̄` caused by a thermal instead of uniform start:
/// `n α / 2`.
pub fn thermal_error_bound(n: u32, alpha: f64) -> f64 {
    f64::from(n) * alpha / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::init_uniform;
    use crate::registers::RegisterSpec;

    fn ensemble(n: u32, k: u32, codes: Vec<u64>) -> DiagonalEnsemble {
        let spec = RegisterSpec::new(n, k).unwrap();
        let w = vec![1.0 / spec.samples() as f64; spec.samples()];
        DiagonalEnsemble::from_parts(spec, w, codes).unwrap()
    }

    #[test]
    fn zero_codes() {
        let r = measure_ideal(&init_uniform(RegisterSpec::new(3, 4).unwrap()));
        assert_eq!(r.gamma_norm, vec![0.0; 4]);
        assert_eq!((r.f_bar, r.sum_estimate), (0.0, 0.0));
        assert!(r.noiseless);
    }

    #[test]
    fn all_ones_codes() {
        let r = measure_ideal(&ensemble(2, 3, vec![7; 4]));
        assert_eq!(r.gamma_norm, vec![1.0; 3]);
        assert_eq!(r.f_bar, 1.0 - 0.125);
    }

    #[test]
    fn hand_example() {
        // codes (1,0) and (0,1) are indices 1 and 2
        let r = measure_ideal(&ensemble(1, 2, vec![1, 2]));
        assert_eq!(r.gamma_norm, vec![0.5, 0.5]);
        assert_eq!(r.f_bar, 0.375);
        assert_eq!(r.sum_estimate, 0.75);
    }

    #[test]
    fn infinite_snr_matches_ideal() {
        let e = ensemble(2, 3, vec![1, 5, 3, 6]);
        let noisy = measure_noisy(&e, &NoiseModel::new(f64::INFINITY, 9, 4).unwrap()).unwrap();
        let ideal = measure_ideal(&e);
        assert_eq!(noisy.gamma_norm, ideal.gamma_norm);
        assert_eq!(noisy.f_bar, ideal.f_bar);
    }

    #[test]
    fn same_seed_same_result() {
        let e = ensemble(2, 3, vec![1, 5, 3, 6]);
        let m = NoiseModel::new(20.0, 1234, 1).unwrap();
        assert_eq!(measure_noisy(&e, &m).unwrap(), measure_noisy(&e, &m).unwrap());
        let other = NoiseModel::new(20.0, 1235, 1).unwrap();
        assert_ne!(measure_noisy(&e, &m).unwrap(), measure_noisy(&e, &other).unwrap());
    }

    #[test]
    fn noisy_signals_are_clamped() {
        let e = ensemble(1, 4, vec![0, 15]);
        for seed in 0..50 {
            let r = measure_noisy(&e, &NoiseModel::new(0.5, seed, 1).unwrap()).unwrap();
            assert!(r.gamma_norm.iter().all(|g| (0.0..=1.0).contains(g)));
        }
    }

    #[test]
    fn bad_noise_parameters() {
        assert!(NoiseModel::new(0.0, 0, 1).is_err());
        assert!(NoiseModel::new(-3.0, 0, 1).is_err());
        assert!(NoiseModel::new(f64::NAN, 0, 1).is_err());
        assert!(NoiseModel::new(10.0, 0, 0).is_err());
    }

    #[test]
    fn required_trials_examples() {
        assert_eq!(required_trials(100, 1.0, TrialsRule::Paper).unwrap(), 10_000);
        assert_eq!(required_trials(100, 200.0, TrialsRule::Parametric).unwrap(), 1);
        assert_eq!(required_trials(100, 1e6, TrialsRule::Parametric).unwrap(), 1);
        assert_eq!(required_trials(100, 1.0, TrialsRule::Parametric).unwrap(), 40_000);
    }

    #[test]
    fn parametric_trials_are_monotone() {
        let snrs = [0.5, 1.0, 3.0, 10.0, 100.0];
        for n in [1u64, 2, 7, 64, 1000] {
            let t: Vec<u64> = snrs
                .iter()
                .map(|&s| required_trials(n, s, TrialsRule::Parametric).unwrap())
                .collect();
            assert!(t.windows(2).all(|w| w[0] >= w[1]));
        }
        for s in snrs {
            let t: Vec<u64> = [1u64, 2, 7, 64, 1000]
                .iter()
                .map(|&n| required_trials(n, s, TrialsRule::Parametric).unwrap())
                .collect();
            assert!(t.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn thermal_bound_examples() {
        assert_eq!(thermal_error_bound(5, 0.0), 0.0);
        assert!((thermal_error_bound(10, 1e-6) - 5e-6).abs() < 1e-20);
    }

    #[test]
    fn f_bar_sigma_single_spin() {
        assert_eq!(f_bar_sigma(1, 0.2), 0.1);
    }
}
