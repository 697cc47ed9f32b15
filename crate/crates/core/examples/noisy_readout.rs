//! Gaussian readout noise and how averaging trials suppresses it.
//!
//! cargo run -p ensemble-sum --example noisy_readout

use ensemble_sum::measurement::{required_trials, TrialsRule};
use ensemble_sum::{apply_oracle, init_uniform, load_table, measure_ideal, measure_noisy};
use ensemble_sum::{NoiseModel, RegisterSpec, Result};

fn main() -> Result<()> {
    let table: Vec<f64> = (0..16).map(|i| i as f64 / 16.0).collect();
    let f = load_table(&table)?;
    let e = apply_oracle(&init_uniform(RegisterSpec::new(4, 8)?), &f)?;
    let ideal = measure_ideal(&e).f_bar;
    println!("ideal f_bar = {ideal}");

    let snr = 20.0;
    for trials in [1, 16, 256, 4096] {
        let errors: Vec<f64> = (0..500)
            .map(|seed| {
                let m = NoiseModel::new(snr, seed, trials)?;
                Ok(measure_noisy(&e, &m)?.f_bar - ideal)
            })
            .collect::<Result<_>>()?;
        let rms = (errors.iter().map(|d| d * d).sum::<f64>() / errors.len() as f64).sqrt();
        println!("trials {trials:>5}  rms error {rms:.2e}");
    }

    println!(
        "trials for N=16, S={snr}: paper {}  parametric {}",
        required_trials(16, snr, TrialsRule::Paper)?,
        required_trials(16, snr, TrialsRule::Parametric)?,
    );
    Ok(())
}
