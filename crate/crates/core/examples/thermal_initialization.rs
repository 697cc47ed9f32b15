//! Starting from a high-temperature thermal state instead of the uniform one.
//!
//! cargo run -p ensemble-sum --example thermal_initialization

use ensemble_sum::measurement::thermal_error_bound;
use ensemble_sum::{run_sum, Initialization, Readout, Result, SampledFunction};

fn main() -> Result<()> {
    let n = 8;
    let f = SampledFunction::from_fn(1 << n, |i| ((i as f64) * 0.37).sin().abs())?;
    let uniform = run_sum(&f, 16, Initialization::Uniform, Readout::Ideal)?;

    for alpha in [1e-6, 1e-4, 1e-3, 1e-2, 0.1] {
        let thermal = run_sum(&f, 16, Initialization::Thermal { alpha }, Readout::Ideal)?;
        let bias = thermal.mean_estimate() - uniform.mean_estimate();
        let bound = thermal_error_bound(n, alpha);
        println!("alpha {alpha:>7.0e}  bias of mean {bias:>+10.3e}  bound {bound:.3e}");
    }

    // the state stops being a valid density matrix once alpha * n reaches 1
    let err = run_sum(&f, 16, Initialization::Thermal { alpha: 0.2 }, Readout::Ideal).unwrap_err();
    println!("alpha 0.2: {} ({err})", err.code());
    Ok(())
}
