//! Bit-level binary floating-point codec for 8- to 128-bit formats.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sign bit, `exponent_bits`, `mantissa_bits`; IEEE-754 semantics with
/// bias `2^(exponent_bits−1) − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FloatFormat {
    pub exponent_bits: u32,
    pub mantissa_bits: u32,
}

impl FloatFormat {
    pub const F8: FloatFormat = FloatFormat::new(4, 3);
    pub const F16: FloatFormat = FloatFormat::new(5, 10);
    pub const F32: FloatFormat = FloatFormat::new(8, 23);
    pub const F64: FloatFormat = FloatFormat::new(11, 52);
    pub const F128: FloatFormat = FloatFormat::new(15, 112);

    pub const ALL: [FloatFormat; 5] = [
        FloatFormat::F8,
        FloatFormat::F16,
        FloatFormat::F32,
        FloatFormat::F64,
        FloatFormat::F128,
    ];

    pub const fn new(exponent_bits: u32, mantissa_bits: u32) -> Self {
        FloatFormat {
            exponent_bits,
            mantissa_bits,
        }
    }

    pub fn from_width(n: usize) -> Result<Self> {
        FloatFormat::ALL
            .into_iter()
            .find(|f| f.total() == n)
            .ok_or(Error::UnsupportedFormat(n))
    }

    pub const fn total(&self) -> usize {
        1 + self.exponent_bits as usize + self.mantissa_bits as usize
    }

    pub const fn bias(&self) -> i32 {
        (1 << (self.exponent_bits - 1)) - 1
    }

    fn exp_max(&self) -> u128 {
        (1u128 << self.exponent_bits) - 1
    }

    fn sign_mask(&self) -> u128 {
        1u128 << (self.total() - 1)
    }

    fn mantissa_mask(&self) -> u128 {
        (1u128 << self.mantissa_bits) - 1
    }

    /// Number of distinct bit patterns, when it fits in `u64`.
    pub fn pattern_count(&self) -> Option<u64> {
        1u64.checked_shl(self.total() as u32)
    }

    pub fn positive_infinity(&self) -> u128 {
        self.exp_max() << self.mantissa_bits
    }

    pub fn quiet_nan(&self) -> u128 {
        self.positive_infinity() | (1u128 << (self.mantissa_bits - 1))
    }

    /// Nearest representable value, ties to even. Overflow gives infinity,
    /// NaN the canonical quiet NaN.
    pub fn encode(&self, x: f64) -> u128 {
        if x.is_nan() {
            return self.quiet_nan();
        }
        let sign = if x.is_sign_negative() { self.sign_mask() } else { 0 };
        if x.is_infinite() {
            return sign | self.positive_infinity();
        }
        if x == 0.0 {
            return sign;
        }
        // |x| = mant · 2^exp exactly.
        let raw = x.abs().to_bits();
        let (field, frac) = ((raw >> 52) as i32, raw & ((1 << 52) - 1));
        let (mant, exp) = if field == 0 {
            (frac, -1074)
        } else {
            (frac | (1 << 52), field - 1075)
        };
        let top = 63 - mant.leading_zeros() as i32 + exp;
        let m = self.mantissa_bits as i32;
        let emin = 1 - self.bias();
        // Exponent of the last mantissa place.
        let quantum = top.max(emin) - m;
        let n = shift_round_even(mant as u128, exp - quantum);
        let biased = (top.max(emin) + self.bias() - 1) as i64;
        let bits = if top < emin {
            n
        } else {
            ((biased as u128) << self.mantissa_bits) + n
        };
        if bits >= self.positive_infinity() {
            sign | self.positive_infinity()
        } else {
            sign | bits
        }
    }

    pub fn decode(&self, bits: u128) -> f64 {
        let negative = bits & self.sign_mask() != 0;
        let field = (bits >> self.mantissa_bits) & self.exp_max();
        let frac = bits & self.mantissa_mask();
        let m = self.mantissa_bits as i32;
        let magnitude = if field == self.exp_max() {
            if frac != 0 {
                return f64::NAN;
            }
            f64::INFINITY
        } else if field == 0 {
            ldexp(frac as f64, 1 - self.bias() - m)
        } else {
            ldexp((frac | (1 << m)) as f64, field as i32 - self.bias() - m)
        };
        if negative {
            -magnitude
        } else {
            magnitude
        }
    }

    pub fn name(&self) -> String {
        format!("f{}", self.total())
    }
}

impl fmt::Display for FloatFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for FloatFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s.trim_start_matches(['f', 'F']);
        let n: usize = digits.parse().map_err(|_| Error::UnsupportedFormat(0))?;
        FloatFormat::from_width(n)
    }
}

/// `round_half_even(v · 2^shift)`.
fn shift_round_even(v: u128, shift: i32) -> u128 {
    if shift >= 0 {
        return v << shift;
    }
    let s = (-shift) as u32;
    if s >= 128 {
        return 0;
    }
    let q = v >> s;
    let rem = v & ((1u128 << s) - 1);
    let half = 1u128 << (s - 1);
    if rem > half || (rem == half && q & 1 == 1) {
        q + 1
    } else {
        q
    }
}

/// `x · 2^k` in power-of-two steps that stay exact until the final one.
fn ldexp(mut x: f64, mut k: i32) -> f64 {
    let pow2 = |e: i32| f64::from_bits(((e + 1023) as u64) << 52);
    while k > 1000 {
        x *= pow2(1000);
        k -= 1000;
    }
    while k < -1000 {
        x *= pow2(-1000);
        k += 1000;
    }
    x * pow2(k)
}

pub fn encode_float(x: f64, fmt: FloatFormat) -> u128 {
    fmt.encode(x)
}

pub fn decode_float(bits: u128, fmt: FloatFormat) -> f64 {
    fmt.decode(bits)
}
