//! Input and output spin registers.
//!
//! The two registers use different bit orders. Output spin `j` carries weight
//! `2^(j-1)`, so spin 1 is the least significant bit of the encoded value.
//! The input register lists the binary digits of `i - 1` most significant
//! first, so `a_{i1}` is the MSB.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported input register.
pub const MAX_INPUT_SPINS: u32 = 24;
/// Largest supported output register.
pub const MAX_OUTPUT_SPINS: u32 = 32;

/// Sizes of the input (`n`) and output (`k`) registers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RegisterSpec {
    input_spins: u32,
    output_spins: u32,
}

impl RegisterSpec {
    pub fn new(input_spins: u32, output_spins: u32) -> Result<Self> {
        check_input_spins(input_spins)?;
        check_output_spins(output_spins)?;
        Ok(Self {
            input_spins,
            output_spins,
        })
    }

    pub fn input_spins(&self) -> u32 {
        self.input_spins
    }

    pub fn output_spins(&self) -> u32 {
        self.output_spins
    }

    /// `N = 2^n`.
    pub fn samples(&self) -> usize {
        1usize << self.input_spins
    }

    /// `δ = 2^-k`, exact.
    pub fn precision(&self) -> f64 {
        precision(self.output_spins)
    }

    /// Number of distinct output codes, `2^k`.
    pub fn code_count(&self) -> u64 {
        1u64 << self.output_spins
    }
}

pub(crate) fn check_input_spins(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Parameter("input register needs at least one spin".into()));
    }
    if n > MAX_INPUT_SPINS {
        return Err(Error::Capacity(format!(
            "n={n} input spins exceeds the limit of {MAX_INPUT_SPINS}"
        )));
    }
    Ok(())
}

pub(crate) fn check_output_spins(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::Parameter("output register needs at least one spin".into()));
    }
    if k > MAX_OUTPUT_SPINS {
        return Err(Error::Capacity(format!(
            "k={k} output spins exceeds the limit of {MAX_OUTPUT_SPINS}"
        )));
    }
    Ok(())
}

/// Grid step `2^-k` for a `k`-spin output register.
pub fn precision(k: u32) -> f64 {
    // powi with a negative power of two is exact for k <= 1022
    2f64.powi(-(k as i32))
}

/// A `k`-bit fixed-point value held as its integer grid index `m`.
///
/// The represented value is `m * 2^-k`. Bit `j` (1-based) is spin `j` of the
/// output register and has weight `2^(j-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OutputCode {
    index: u64,
    width: u32,
}

impl OutputCode {
    pub fn zero(width: u32) -> Self {
        Self { index: 0, width }
    }

    pub fn from_index(index: u64, width: u32) -> Result<Self> {
        check_output_spins(width)?;
        if width < 64 && index >> width != 0 {
            return Err(Error::Domain(format!(
                "code index {index} does not fit in {width} bits"
            )));
        }
        Ok(Self { index, width })
    }

    /// Builds a code from spin values `b_1 .. b_k` (LSB first).
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let width = u32::try_from(bits.len()).unwrap_or(u32::MAX);
        check_output_spins(width)?;
        let mut index = 0u64;
        for (j, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => index |= 1 << j,
                other => {
                    return Err(Error::Domain(format!("spin value {other} is not 0 or 1")))
                }
            }
        }
        Ok(Self { index, width })
    }

    /// The integer `m` with value `m * 2^-k`.
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Spin `j` (1-based).
    pub fn bit(&self, j: u32) -> u8 {
        debug_assert!((1..=self.width).contains(&j));
        ((self.index >> (j - 1)) & 1) as u8
    }

    /// Spin values `b_1 .. b_k`, LSB first.
    pub fn bits(&self) -> Vec<u8> {
        (1..=self.width).map(|j| self.bit(j)).collect()
    }

    /// Bitwise XOR of two codes of equal width.
    pub fn xor(self, other: OutputCode) -> OutputCode {
        debug_assert_eq!(self.width, other.width);
        OutputCode {
            index: self.index ^ other.index,
            width: self.width,
        }
    }
}

/// Maps `x ∈ [0, 1]` to the code whose interval `[mδ, (m+1)δ)` contains it.
///
/// The top interval `[1-δ, 1]` is closed, so `x = 1` gives the all-ones code.
pub fn encode_value(x: f64, k: u32) -> Result<OutputCode> {
    check_output_spins(k)?;
    let index = encode_index(x, k)?;
    Ok(OutputCode { index, width: k })
}

pub(crate) fn encode_index(x: f64, k: u32) -> Result<u64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "function value {x} is outside [0, 1]; normalize it first"
        )));
    }
    let top = (1u64 << k) - 1;
    // scaling by 2^k is exact, so floor() sees the true quotient x/δ
    let scaled = (x * (1u64 << k) as f64).floor() as u64;
    Ok(scaled.min(top))
}

/// `δ · Σ_j 2^(j-1) b_j`, the start of the code's interval.
pub fn decode_code(code: OutputCode) -> f64 {
    code.index as f64 * precision(code.width)
}

/// Binary digits of `i - 1`, most significant first.
pub fn index_to_bits(i: usize, n: u32) -> Result<Vec<u8>> {
    check_input_spins(n)?;
    let samples = 1usize << n;
    if i == 0 || i > samples {
        return Err(Error::Domain(format!("input index {i} is outside 1..={samples}")));
    }
    let v = i - 1;
    Ok((0..n).rev().map(|shift| ((v >> shift) & 1) as u8).collect())
}

/// Inverse of [`index_to_bits`].
pub fn bits_to_index(bits: &[u8]) -> Result<usize> {
    let n = u32::try_from(bits.len()).unwrap_or(u32::MAX);
    check_input_spins(n)?;
    let mut v = 0usize;
    for &b in bits {
        if b > 1 {
            return Err(Error::Domain(format!("spin value {b} is not 0 or 1")));
        }
        v = (v << 1) | b as usize;
    }
    Ok(v + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_examples() {
        let c = encode_value(0.0, 3).unwrap();
        assert_eq!(c.bits(), vec![0, 0, 0]);
        assert_eq!(decode_code(c), 0.0);

        let c = encode_value(1.0, 3).unwrap();
        assert_eq!(c.bits(), vec![1, 1, 1]);
        assert_eq!(decode_code(c), 0.875);

        // floor(0.3 / 0.125) = 2
        let c = encode_value(0.3, 3).unwrap();
        assert_eq!(c.index(), 2);
        assert_eq!(c.bits(), vec![0, 1, 0]);
        assert_eq!(decode_code(c), 0.25);
    }

    #[test]
    fn encode_rejects_out_of_range() {
        for x in [-1e-12, 1.0 + 1e-12, f64::NAN, f64::INFINITY] {
            assert!(matches!(encode_value(x, 4), Err(Error::Domain(_))), "{x}");
        }
    }

    #[test]
    fn interior_boundaries_belong_to_upper_interval() {
        let c = encode_value(0.25, 2).unwrap();
        assert_eq!(c.index(), 1);
        let c = encode_value(0.75, 2).unwrap();
        assert_eq!(c.index(), 3);
    }

    #[test]
    fn decode_examples() {
        let code = |b: &[u8]| OutputCode::from_bits(b).unwrap();
        assert_eq!(decode_code(code(&[0, 0, 0])), 0.0);
        assert_eq!(decode_code(code(&[1, 1, 1])), 1.0 - 0.125);
        assert_eq!(decode_code(code(&[0, 1, 0])), 0.25);
    }

    #[test]
    fn decode_is_injective_onto_grid() {
        let k = 10;
        let delta = precision(k);
        let mut seen = std::collections::HashSet::new();
        for m in 0..(1u64 << k) {
            let v = decode_code(OutputCode::from_index(m, k).unwrap());
            assert_eq!(v, m as f64 * delta);
            assert!(seen.insert(v.to_bits()));
        }
    }

    #[test]
    fn floor_rule_on_dense_grid() {
        for k in 1..=16 {
            let delta = precision(k);
            let mut prev = 0u64;
            for step in 0..=4096u32 {
                let x = f64::from(step) / 4096.0;
                let c = encode_value(x, k).unwrap();
                assert!(c.index() >= prev, "monotone");
                prev = c.index();
                let diff = x - decode_code(c);
                if x == 1.0 {
                    assert_eq!(diff, delta);
                } else {
                    assert!((0.0..delta).contains(&diff), "k={k} x={x}");
                }
            }
        }
    }

    #[test]
    fn input_bit_examples() {
        assert_eq!(index_to_bits(1, 2).unwrap(), vec![0, 0]);
        assert_eq!(index_to_bits(4, 2).unwrap(), vec![1, 1]);
        assert_eq!(index_to_bits(3, 2).unwrap(), vec![1, 0]);
        assert!(index_to_bits(0, 2).is_err());
        assert!(index_to_bits(5, 2).is_err());
    }

    #[test]
    fn input_bits_round_trip() {
        for n in 1..=8 {
            for i in 1..=(1usize << n) {
                assert_eq!(bits_to_index(&index_to_bits(i, n).unwrap()).unwrap(), i);
            }
        }
    }

    #[test]
    fn spec_limits() {
        assert!(RegisterSpec::new(24, 32).is_ok());
        assert!(matches!(RegisterSpec::new(25, 4), Err(Error::Capacity(_))));
        assert!(matches!(RegisterSpec::new(4, 33), Err(Error::Capacity(_))));
        assert!(matches!(RegisterSpec::new(0, 4), Err(Error::Parameter(_))));
        let s = RegisterSpec::new(5, 7).unwrap();
        assert_eq!(s.samples(), 32);
        assert_eq!(s.precision(), 1.0 / 128.0);
    }

    #[test]
    fn k32_top_code() {
        let c = encode_value(1.0, 32).unwrap();
        assert_eq!(c.index(), u32::MAX as u64);
        assert_eq!(decode_code(c), 1.0 - precision(32));
    }
}
