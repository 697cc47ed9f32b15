//! Query counts of ensemble summing against search baselines.
//!
//! cargo run -p ensemble-sum --example query_complexity

use ensemble_sum::complexity::{
    advantage_regime, search_threshold, summing_threshold, table_row, AlgorithmKind, MAGNITUDE_LABEL,
};
use ensemble_sum::Result;

fn main() -> Result<()> {
    let samples = 1u64 << 20;
    println!("N = {samples}, {MAGNITUDE_LABEL}");
    for kind in AlgorithmKind::ALL {
        let r = table_row(kind, samples)?;
        println!("{:<18} single {:>12.4e}  trials {:>12.4e}  overall {:>12.4e}", kind.to_string(), r.single_run, r.trials, r.overall);
    }

    for snr in [1e2, 1e4, 1e6] {
        let s = search_threshold(snr)?;
        let v = advantage_regime(samples, snr)?;
        println!(
            "S={snr:.0e}  summing threshold {:.4e}  search threshold {:.4e}  verdict at N: {:?}",
            summing_threshold(snr)?,
            s.n_max,
            v.verdict,
        );
    }
    Ok(())
}
