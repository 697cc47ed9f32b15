//! The XOR oracle flips output codes in place and undoes itself.
//!
//! cargo run -p ensemble-sum --example oracle_reversibility

use ensemble_sum::registers::index_to_bits;
use ensemble_sum::{apply_oracle, init_uniform, load_table, RegisterSpec, Result};

fn main() -> Result<()> {
    let f = load_table(&[0.0, 0.25, 0.5, 0.875])?;
    let spec = RegisterSpec::new(2, 3)?;
    let start = init_uniform(spec);

    let once = apply_oracle(&start, &f)?;
    for (i, w, code) in once.entries() {
        println!("input {:?}  weight {w}  code {:?}", index_to_bits(i, 2)?, code.bits());
    }

    let twice = apply_oracle(&once, &f)?;
    assert_eq!(twice, start);
    println!("oracle applied twice restores the ensemble; {} queries charged", f.query_count());
    Ok(())
}
