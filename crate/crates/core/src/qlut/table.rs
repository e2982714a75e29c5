//! Activation functions and their exhaustive lookup tables.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use libm::erfc;

use super::float::FloatFormat;
use crate::error::{Error, Result};

/// Largest input width for which a table is materialized.
pub const MAX_TABLE_BITS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActivationFn {
    Sigmoid,
    Tanh,
    Swish,
    /// `α = 1`.
    Elu,
    /// Exact Gaussian-CDF form.
    Gelu,
}

impl ActivationFn {
    pub const ALL: [ActivationFn; 5] = [
        ActivationFn::Sigmoid,
        ActivationFn::Tanh,
        ActivationFn::Swish,
        ActivationFn::Elu,
        ActivationFn::Gelu,
    ];

    pub fn eval(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        match self {
            ActivationFn::Sigmoid => sigmoid(x),
            ActivationFn::Tanh => x.tanh(),
            ActivationFn::Swish => {
                if x == f64::NEG_INFINITY {
                    -0.0
                } else {
                    x * sigmoid(x)
                }
            }
            ActivationFn::Elu => {
                if x > 0.0 {
                    x
                } else {
                    x.exp_m1()
                }
            }
            ActivationFn::Gelu => {
                if x == f64::NEG_INFINITY {
                    -0.0
                } else {
                    0.5 * x * erfc(-x / std::f64::consts::SQRT_2)
                }
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ActivationFn::Sigmoid => "sigmoid",
            ActivationFn::Tanh => "tanh",
            ActivationFn::Swish => "swish",
            ActivationFn::Elu => "elu",
            ActivationFn::Gelu => "gelu",
        }
    }
}

fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

impl fmt::Display for ActivationFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ActivationFn {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        ActivationFn::ALL
            .into_iter()
            .find(|f| f.name() == s.to_ascii_lowercase())
            .ok_or_else(|| format!("unknown function {s:?}; expected sigmoid, tanh, swish, elu or gelu"))
    }
}

/// Total map from `input_width`-bit patterns to `output_width`-bit patterns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LookupTable {
    pub input_width: usize,
    pub output_width: usize,
    pub entries: Vec<u64>,
}

impl LookupTable {
    pub fn new(input_width: usize, output_width: usize, entries: Vec<u64>) -> Result<Self> {
        if input_width > MAX_TABLE_BITS {
            return Err(Error::TableTooLarge(input_width));
        }
        let expected = 1usize << input_width;
        if entries.len() != expected {
            return Err(Error::TableShape {
                expected,
                actual: entries.len(),
            });
        }
        Ok(LookupTable {
            input_width,
            output_width,
            entries,
        })
    }

    pub fn from_fn(input_width: usize, output_width: usize, f: impl Fn(u64) -> u64) -> Result<Self> {
        if input_width > MAX_TABLE_BITS {
            return Err(Error::TableTooLarge(input_width));
        }
        let mask = if output_width >= 64 { u64::MAX } else { (1 << output_width) - 1 };
        LookupTable::new(
            input_width,
            output_width,
            (0..1u64 << input_width).map(|x| f(x) & mask).collect(),
        )
    }

    pub fn get(&self, input: u64) -> u64 {
        self.entries[input as usize]
    }

    /// One `input output` line per entry, in binary or hex.
    pub fn dump(&self, hex: bool) -> String {
        let mut out = String::new();
        let hw = |bits: usize| bits.div_ceil(4);
        for (i, &o) in self.entries.iter().enumerate() {
            if hex {
                writeln!(
                    out,
                    "{:0iw$x} {:0ow$x}",
                    i,
                    o,
                    iw = hw(self.input_width),
                    ow = hw(self.output_width)
                )
            } else {
                writeln!(
                    out,
                    "{:0iw$b} {:0ow$b}",
                    i,
                    o,
                    iw = self.input_width,
                    ow = self.output_width
                )
            }
            .unwrap();
        }
        out
    }
}

/// `entry(p) = encode(f(decode(p)))` for every pattern `p` of `fmt`.
pub fn build_table(f: ActivationFn, fmt: FloatFormat) -> Result<LookupTable> {
    let n = fmt.total();
    if n > MAX_TABLE_BITS {
        return Err(Error::TableTooLarge(n));
    }
    let entries = (0..1u64 << n)
        .into_par_iter()
        .map(|p| fmt.encode(f.eval(fmt.decode(p as u128))) as u64)
        .collect();
    LookupTable::new(n, n, entries)
}
