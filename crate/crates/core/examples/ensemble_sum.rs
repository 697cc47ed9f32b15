//! Sum a table of samples with one oracle call and an ideal readout.
//!
//! cargo run -p ensemble-sum --example ensemble_sum

use ensemble_sum::pipeline::encoded_sum;
use ensemble_sum::{run_sum, Initialization, Readout, Result, SampledFunction};

fn main() -> Result<()> {
    // 100 samples of x^2 on [0,1); the domain is padded to 128 with zeros
    let f = SampledFunction::from_fn(100, |i| {
        let x = (i - 1) as f64 / 100.0;
        x * x
    })?;

    for k in [4, 8, 16] {
        let run = run_sum(&f, k, Initialization::Uniform, Readout::Ideal)?;
        println!(
            "k={k:>2}  sum {:.8}  mean {:.8}  encoded sum {:.8}  exact {:.8}",
            run.sum_estimate(),
            run.mean_estimate(),
            encoded_sum(&f, k)?,
            f.exact_sum()?,
        );
    }
    println!("padded domain {} for {} samples, {} oracle queries", f.padded_len(), f.true_len(), f.query_count());
    Ok(())
}
