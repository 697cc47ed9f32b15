//! A grid sweep driven through the same configuration the CLI uses.
//!
//! cargo run -p ensemble-sum --example parameter_sweep

use ensemble_sum::cli::{cmd_sweep, render_records, CommandKind, OutputFormat, RunConfig, SweepGrid};
use ensemble_sum::Result;

fn main() -> Result<()> {
    let mut config = RunConfig::new(CommandKind::Sweep);
    config.integrand = Some("quadratic".into());
    config.seed = 42;
    config.grid = Some(SweepGrid {
        n: vec![Some(6), Some(10)],
        k: vec![8, 16],
        snr: vec![None, Some(500.0)],
        alpha: vec![0.0],
    });
    let records = cmd_sweep(&config)?;
    print!("{}", render_records(&records, OutputFormat::Csv)?);
    Ok(())
}
