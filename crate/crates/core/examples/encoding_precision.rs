//! Fixed-point output encoding: how a value in [0,1] lands on k spins.
//!
//! cargo run -p ensemble-sum --example encoding_precision

use ensemble_sum::registers::precision;
use ensemble_sum::{decode_code, encode_value, Result};

fn main() -> Result<()> {
    let x = std::f64::consts::FRAC_1_PI;
    println!("x = {x}");
    println!("{:>3}  {:>24}  {:>12}  {:>12}", "k", "bits (spin k .. spin 1)", "decoded", "x - decoded");
    for k in [1, 2, 4, 8, 12, 16] {
        let code = encode_value(x, k)?;
        let bits: String = code.bits().iter().rev().map(|b| char::from(b'0' + b)).collect();
        let back = decode_code(code);
        println!("{k:>3}  {bits:>24}  {back:>12.9}  {:>12.3e}", x - back);
        assert!(x - back < precision(k));
    }

    // the top of the range is clamped onto the last code
    let one = encode_value(1.0, 8)?;
    println!("\n1.0 at k=8 -> index {} ({})", one.index(), decode_code(one));
    Ok(())
}
