//! Definite integrals as ensemble sums over a left-endpoint grid.
//!
//! cargo run -p ensemble-sum --example riemann_integration

use ensemble_sum::integrate::{estimate_integral, BuiltinIntegrand, IntegrandSpec};
use ensemble_sum::measurement::NoiseModel;
use ensemble_sum::{Readout, Result};

fn main() -> Result<()> {
    let (a, b) = (0.0, 2.0);
    let quad = BuiltinIntegrand::Quadratic;
    let spec = quad.build(a, b)?.with_lipschitz(quad.lipschitz(a, b))?;
    let exact = quad.exact_integral(a, b);
    for n in [4, 8, 12] {
        let est = estimate_integral(&spec, n, 20, Readout::Ideal)?;
        println!(
            "n={n:>2}  value {:.8}  error {:.2e}  bound {:.2e}",
            est.value,
            (est.value - exact).abs(),
            est.total_bound()
        );
    }

    // a custom integrand with a declared Lipschitz constant, read out with noise
    let g = IntegrandSpec::new(|x: f64| (-x * x).exp(), 0.0, 1.0)?.with_lipschitz(0.86)?;
    let noisy = Readout::Noisy(NoiseModel::new(1e3, 7, 64)?);
    let est = estimate_integral(&g, 10, 16, noisy)?;
    println!(
        "exp(-x^2) on [0,1]: {:.6} (riemann {:.1e}, encoding {:.1e}, noise {:.1e})",
        est.value,
        est.riemann_bound.unwrap_or(f64::NAN),
        est.encoding_bound,
        est.noise_bound
    );
    Ok(())
}
