//! Means and definite integrals through the ensemble summing pipeline.
//!
//! An integrand `g: [a, b] → [0, 1]` is sampled at the `N = 2^n` left
//! endpoints `x_i = a + (i-1)(b-a)/N`. The measured mean `f̄` then gives the
//! Riemann sum `(b-a) f̄`. The reported error budget has three parts:
//!
//! * Riemann: `(b-a) L / N` for a Lipschitz constant `L`. It dominates the
//!   left-endpoint error `L (b-a)² / (2N)` only while `b - a <= 2`; wider
//!   intervals flag it as not guaranteed.
//! * encoding: `(b-a) δ`, since flooring drops less than `δ` per sample.
//! * noise: three standard deviations of `(b-a) f̄` under the readout noise.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ensemble::Initialization;
use crate::error::{Error, Result};
use crate::measurement::{f_bar_sigma, Readout};
use crate::oracle::{QueryLedger, SampledFunction};
use crate::pipeline::{run_sum, SumRun};
use crate::registers::{check_input_spins, precision};

const LIPSCHITZ_TOLERANCE: f64 = 1e-9;
const LIPSCHITZ_PAIRS: usize = 512;
/// Widest interval for which the Riemann bound is guaranteed.
pub const RIEMANN_BOUND_MAX_WIDTH: f64 = 2.0;
/// Noise bound = this many standard deviations.
pub const NOISE_BOUND_SIGMAS: f64 = 3.0;

type Integrand = Box<dyn Fn(f64) -> f64 + Send + Sync>;

pub struct IntegrandSpec {
    g: Integrand,
    a: f64,
    b: f64,
    lipschitz: Option<f64>,
}

impl fmt::Debug for IntegrandSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntegrandSpec")
            .field("a", &self.a)
            .field("b", &self.b)
            .field("lipschitz", &self.lipschitz)
            .finish_non_exhaustive()
    }
}

impl IntegrandSpec {
    pub fn new<G>(g: G, a: f64, b: f64) -> Result<Self>
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        check_interval(a, b)?;
        Ok(Self {
            g: Box::new(g),
            a,
            b,
            lipschitz: None,
        })
    }

    /// Attaches a Lipschitz constant after spot-checking it on random pairs.
    pub fn with_lipschitz(mut self, l: f64) -> Result<Self> {
        if !(l >= 0.0) || !l.is_finite() {
            return Err(Error::Parameter(format!("Lipschitz constant must be finite and >= 0, got {l}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x4c49_5053);
        for _ in 0..LIPSCHITZ_PAIRS {
            let x = rng.random_range(self.a..=self.b);
            let y = rng.random_range(self.a..=self.b);
            let (gx, gy) = ((self.g)(x), (self.g)(y));
            if (gx - gy).abs() > l * (x - y).abs() + LIPSCHITZ_TOLERANCE {
                return Err(Error::Validation {
                    message: format!(
                        "L={l} is not a Lipschitz constant: |g({x}) - g({y})| = {} > L|x - y| = {}",
                        (gx - gy).abs(),
                        l * (x - y).abs()
                    ),
                    indices: Vec::new(),
                });
            }
        }
        self.lipschitz = Some(l);
        Ok(self)
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn lipschitz(&self) -> Option<f64> {
        self.lipschitz
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.g)(x)
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!("interval [{a}, {b}] needs finite a < b")));
    }
    Ok(())
}

/// Left endpoints `a + (i-1)(b-a)/N`, `i = 1..=N`.
pub fn sample_points(a: f64, b: f64, samples: usize) -> Result<Vec<f64>> {
    check_interval(a, b)?;
    if samples == 0 {
        return Err(Error::Parameter("need at least one sample point".into()));
    }
    let h = (b - a) / samples as f64;
    Ok((0..samples).map(|i| a + i as f64 * h).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralEstimate {
    pub value: f64,
    /// `(b-a) L / N`, when `L` is known.
    pub riemann_bound: Option<f64>,
    /// Whether the interval is narrow enough for `riemann_bound` to hold.
    pub riemann_bound_valid: bool,
    pub encoding_bound: f64,
    pub noise_bound: f64,
    pub samples: usize,
    pub output_spins: u32,
    pub trials: u64,
    pub mean: f64,
    pub ledger: QueryLedger,
}

impl IntegralEstimate {
    pub fn total_bound(&self) -> f64 {
        self.riemann_bound.unwrap_or(0.0) + self.encoding_bound + self.noise_bound
    }
}

/// Samples `g` on `2^n` left endpoints and integrates through the pipeline.
pub fn estimate_integral(
    spec: &IntegrandSpec,
    n: u32,
    k: u32,
    readout: Readout,
) -> Result<IntegralEstimate> {
    integrate_with(spec, n, k, Initialization::Uniform, readout).map(|(est, _)| est)
}

/// [`estimate_integral`] with a chosen initial state; also returns the
/// underlying summing run.
pub fn integrate_with(
    spec: &IntegrandSpec,
    n: u32,
    k: u32,
    init: Initialization,
    readout: Readout,
) -> Result<(IntegralEstimate, SumRun)> {
    let f = sample_integrand(spec, n)?;
    let samples = f.padded_len();
    let run = run_sum(&f, k, init, readout)?;
    let width = spec.width();
    let noise_sigma = f_bar_sigma(k, readout.spin_sigma());
    let estimate = IntegralEstimate {
        value: width * run.measurement.f_bar,
        riemann_bound: spec.lipschitz.map(|l| width * l / samples as f64),
        riemann_bound_valid: width <= RIEMANN_BOUND_MAX_WIDTH,
        encoding_bound: width * precision(k),
        noise_bound: NOISE_BOUND_SIGMAS * width * noise_sigma,
        samples,
        output_spins: k,
        trials: readout.trials(),
        mean: run.measurement.f_bar,
        ledger: run.ledger,
    };
    Ok((estimate, run))
}

/// The table `f(i) = g(x_i)` on `2^n` left endpoints, range-checked.
pub fn sample_integrand(spec: &IntegrandSpec, n: u32) -> Result<SampledFunction> {
    check_input_spins(n)?;
    let xs = sample_points(spec.a, spec.b, 1usize << n)?;
    let values: Vec<f64> = xs.par_iter().map(|&x| (spec.g)(x)).collect();
    if let Some(i) = values.iter().position(|v| !(0.0..=1.0).contains(v)) {
        return Err(Error::Validation {
            message: format!(
                "integrand value g({}) = {} at grid point {} is outside [0, 1]",
                xs[i],
                values[i],
                i + 1
            ),
            indices: vec![i + 1],
        });
    }
    SampledFunction::from_table(values)
}

/// Mean of `f` over its real samples, measured on a `2^n`-input ensemble.
pub fn estimate_mean(f: SampledFunction, n: u32, k: u32, readout: Readout) -> Result<f64> {
    let f = f.padded_to(n)?;
    let run = run_sum(&f, k, Initialization::Uniform, readout)?;
    Ok(run.mean_estimate())
}

/// Integrands shipped with the library, each rescaled onto `[a, b]` with range
/// inside `[0, 1]`. With `t = (x - a)/(b - a)`:
///
/// | id           | g(x)                     | Lipschitz constant |
/// |--------------|--------------------------|--------------------|
/// | `linear`     | `t`                      | `1/(b-a)`          |
/// | `quadratic`  | `t²`                     | `2/(b-a)`          |
/// | `sine`       | `(1 + sin 2πt)/2`        | `π/(b-a)`          |
/// | `constant:c` | `c`                      | `0`                |
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuiltinIntegrand {
    Linear,
    Quadratic,
    Sine,
    Constant(f64),
}

impl BuiltinIntegrand {
    pub fn build(self, a: f64, b: f64) -> Result<IntegrandSpec> {
        let w = b - a;
        match self {
            BuiltinIntegrand::Linear => IntegrandSpec::new(move |x| ((x - a) / w).clamp(0.0, 1.0), a, b),
            BuiltinIntegrand::Quadratic => {
                IntegrandSpec::new(move |x| ((x - a) / w).clamp(0.0, 1.0).powi(2), a, b)
            }
            BuiltinIntegrand::Sine => IntegrandSpec::new(
                move |x| (0.5 * (1.0 + (2.0 * PI * (x - a) / w).sin())).clamp(0.0, 1.0),
                a,
                b,
            ),
            BuiltinIntegrand::Constant(c) => {
                if !(0.0..=1.0).contains(&c) {
                    return Err(Error::validation(format!("constant {c} is outside [0, 1]")));
                }
                IntegrandSpec::new(move |_| c, a, b)
            }
        }
    }

    /// The integrand's smallest Lipschitz constant on `[a, b]`.
    pub fn lipschitz(self, a: f64, b: f64) -> f64 {
        let w = b - a;
        match self {
            BuiltinIntegrand::Linear => 1.0 / w,
            BuiltinIntegrand::Quadratic => 2.0 / w,
            BuiltinIntegrand::Sine => PI / w,
            BuiltinIntegrand::Constant(_) => 0.0,
        }
    }

    /// Closed-form `∫_a^b g`.
    pub fn exact_integral(self, a: f64, b: f64) -> f64 {
        let w = b - a;
        match self {
            BuiltinIntegrand::Linear | BuiltinIntegrand::Sine => w / 2.0,
            BuiltinIntegrand::Quadratic => w / 3.0,
            BuiltinIntegrand::Constant(c) => c * w,
        }
    }
}

impl FromStr for BuiltinIntegrand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(BuiltinIntegrand::Linear),
            "quadratic" => Ok(BuiltinIntegrand::Quadratic),
            "sine" => Ok(BuiltinIntegrand::Sine),
            other => match other.strip_prefix("constant:") {
                Some(c) => c
                    .parse()
                    .map(BuiltinIntegrand::Constant)
                    .map_err(|_| Error::Usage(format!("bad constant in integrand id '{other}'"))),
                None => Err(Error::Usage(format!(
                    "unknown integrand '{other}' (expected linear|quadratic|sine|constant:<c>)"
                ))),
            },
        }
    }
}

impl fmt::Display for BuiltinIntegrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinIntegrand::Linear => f.write_str("linear"),
            BuiltinIntegrand::Quadratic => f.write_str("quadratic"),
            BuiltinIntegrand::Sine => f.write_str("sine"),
            BuiltinIntegrand::Constant(c) => write!(f, "constant:{c}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measurement::NoiseModel;
    use crate::oracle::load_table;

    #[test]
    fn grid_examples() {
        assert_eq!(sample_points(0.0, 1.0, 4).unwrap(), vec![0.0, 0.25, 0.5, 0.75]);
        assert_eq!(sample_points(-1.0, 1.0, 2).unwrap(), vec![-1.0, 0.0]);
        assert_eq!(sample_points(2.0, 3.0, 1).unwrap(), vec![2.0]);
        assert!(matches!(sample_points(1.0, 1.0, 4), Err(Error::Domain(_))));
        assert!(sample_points(2.0, 1.0, 4).is_err());
    }

    #[test]
    fn constant_integrand() {
        let spec = BuiltinIntegrand::Constant(0.3).build(0.0, 2.0).unwrap();
        let est = estimate_integral(&spec, 4, 10, Readout::Ideal).unwrap();
        assert!((est.value - 0.6).abs() <= est.encoding_bound);
        assert_eq!(est.riemann_bound, None);
        let spec = spec.with_lipschitz(0.0).unwrap();
        let est = estimate_integral(&spec, 4, 10, Readout::Ideal).unwrap();
        assert_eq!(est.riemann_bound, Some(0.0));
    }

    #[test]
    fn linear_four_points() {
        let spec = IntegrandSpec::new(|x| x, 0.0, 1.0).unwrap().with_lipschitz(1.0).unwrap();
        let est = estimate_integral(&spec, 2, 24, Readout::Ideal).unwrap();
        assert_eq!(est.value, 0.375);
        assert!((0.5 - est.value) <= est.riemann_bound.unwrap());
        assert_eq!(est.riemann_bound, Some(0.25));
    }

    #[test]
    fn linear_1024_points() {
        let spec = IntegrandSpec::new(|x| x, 0.0, 1.0).unwrap();
        let est = estimate_integral(&spec, 10, 20, Readout::Ideal).unwrap();
        assert!((est.value - 0.5).abs() <= 1.0 / 1024.0 + precision(20));
        assert_eq!(est.ledger.overall_queries, 1);
    }

    #[test]
    fn out_of_range_integrand_names_the_point() {
        let spec = IntegrandSpec::new(|x| 2.0 * x, 0.0, 1.0).unwrap();
        match estimate_integral(&spec, 2, 8, Readout::Ideal) {
            Err(Error::Validation { indices, message }) => {
                assert_eq!(indices, vec![4]);
                assert!(message.contains("0.75"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_lipschitz_is_rejected() {
        let spec = IntegrandSpec::new(|x| x * x, 0.0, 1.0).unwrap();
        assert!(spec.with_lipschitz(0.5).is_err());
    }

    #[test]
    fn builtin_lipschitz_constants_pass_the_spot_check() {
        for g in [BuiltinIntegrand::Linear, BuiltinIntegrand::Quadratic, BuiltinIntegrand::Sine] {
            for (a, b) in [(0.0, 1.0), (-1.0, 1.0), (0.5, 0.75)] {
                let l = g.lipschitz(a, b);
                assert!(g.build(a, b).unwrap().with_lipschitz(l).is_ok(), "{g} [{a},{b}]");
            }
        }
    }

    #[test]
    fn wide_interval_flags_riemann_bound() {
        let spec = BuiltinIntegrand::Linear.build(0.0, 3.0).unwrap();
        let est = estimate_integral(&spec, 4, 8, Readout::Ideal).unwrap();
        assert!(!est.riemann_bound_valid);
    }

    #[test]
    fn mean_examples() {
        let zero = load_table(&[0.0; 5]).unwrap();
        assert_eq!(estimate_mean(zero, 3, 8, Readout::Ideal).unwrap(), 0.0);
        let f = load_table(&[0.25, 0.5]).unwrap();
        assert_eq!(estimate_mean(f, 1, 2, Readout::Ideal).unwrap(), 0.375);
    }

    #[test]
    fn mean_uses_true_length() {
        let f = load_table(&[0.5, 0.5, 0.5]).unwrap();
        assert_eq!(estimate_mean(f, 4, 8, Readout::Ideal).unwrap(), 0.5);
    }

    #[test]
    fn noise_bound_present_when_noisy() {
        let spec = BuiltinIntegrand::Sine.build(0.0, 1.0).unwrap();
        let noise = NoiseModel::new(100.0, 7, 16).unwrap();
        let est = estimate_integral(&spec, 6, 12, Readout::Noisy(noise)).unwrap();
        assert!(est.noise_bound > 0.0);
        assert_eq!(est.ledger.overall_queries, 16);
    }

    #[test]
    fn parse_ids() {
        assert_eq!("sine".parse::<BuiltinIntegrand>().unwrap(), BuiltinIntegrand::Sine);
        assert_eq!(
            "constant:0.5".parse::<BuiltinIntegrand>().unwrap(),
            BuiltinIntegrand::Constant(0.5)
        );
        assert!(matches!("cubic".parse::<BuiltinIntegrand>(), Err(Error::Usage(_))));
    }
}
