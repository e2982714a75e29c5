//! Leaky ReLU with `α = 2^−e`, `e ∈ {3, 4, 5, 6}`.
//!
//! The output register holds `m = n + e` bits: `n` integer bits followed by
//! `e` fraction bits. Part one copies `x₂…xₙ` into integer bits `2…n` when
//! x₁ = 0 (as in ReLU); part two copies them `k = 1 + e` places further down
//! when x₁ = 1 and writes the sign. Each part is one shared-control batch,
//! for a lowered T-depth of 8.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::circuit::{Circuit, Gate, QubitId, Role};
use crate::error::{Error, Result};
use crate::sim::{bits_msb_first, value_msb_first};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Encoding {
    /// Sign and magnitude.
    TrueForm,
    TwosComplement,
}

impl FromStr for Encoding {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "true" | "true-form" | "true_form" => Ok(Encoding::TrueForm),
            "twos" | "twos-complement" | "twos_complement" => Ok(Encoding::TwosComplement),
            other => Err(format!("unknown encoding {other:?}; expected `true` or `twos`")),
        }
    }
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Encoding::TrueForm => "true",
            Encoding::TwosComplement => "twos",
        })
    }
}

pub const ALPHA_EXPONENTS: [u32; 4] = [3, 4, 5, 6];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeakySpec {
    pub n: usize,
    pub alpha_exponent: u32,
    pub encoding: Encoding,
}

impl LeakySpec {
    pub fn new(n: usize, alpha_exponent: u32, encoding: Encoding) -> Result<Self> {
        let spec = LeakySpec {
            n,
            alpha_exponent,
            encoding,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Accepts α as a number; it must be exactly one of the four supported
    /// powers of two.
    pub fn with_alpha(n: usize, alpha: f64, encoding: Encoding) -> Result<Self> {
        let e = ALPHA_EXPONENTS
            .into_iter()
            .find(|&e| alpha == (-(e as f64)).exp2())
            .ok_or_else(|| Error::UnsupportedAlpha(alpha.to_string()))?;
        LeakySpec::new(n, e, encoding)
    }

    pub fn validate(&self) -> Result<()> {
        if !ALPHA_EXPONENTS.contains(&self.alpha_exponent) {
            return Err(Error::InvalidAlpha(self.alpha_exponent));
        }
        if self.n < 2 {
            return Err(Error::WidthTooSmall(self.n));
        }
        Ok(())
    }

    pub fn alpha(&self) -> f64 {
        (-(self.alpha_exponent as f64)).exp2()
    }

    /// Output width `n + e`.
    pub fn m(&self) -> usize {
        self.n + self.alpha_exponent as usize
    }

    /// Shift offset `1 + e` between part-two source and target indices.
    pub fn k(&self) -> usize {
        1 + self.alpha_exponent as usize
    }

    pub fn inputs(&self) -> Vec<QubitId> {
        (0..self.n).map(QubitId).collect()
    }

    pub fn outputs(&self) -> Vec<QubitId> {
        (self.n..self.n + self.m()).map(QubitId).collect()
    }

    /// Output qubit `j`, 1-based as in `|0⟩₁…|0⟩ₘ`.
    fn out(&self, j: usize) -> QubitId {
        QubitId(self.n + j - 1)
    }
}

pub fn build_leaky_relu(spec: &LeakySpec) -> Result<Circuit> {
    spec.validate()?;
    let n = spec.n;
    let mut c = Circuit::new(n + spec.m());
    c.set_roles(spec.inputs(), Role::Input);
    c.set_roles(spec.outputs(), Role::Output);

    c.push(Gate::x(0));
    c.extend((1..n).map(|i| Gate::ccx(0, i, spec.out(i + 1))));
    c.push(Gate::x(0));

    c.extend((1..n).map(|i| Gate::ccx(0, i, spec.out(i + spec.k()))));
    c.push(Gate::cx(0, spec.out(1)));
    if spec.encoding == Encoding::TwosComplement {
        c.extend((2..=spec.k()).map(|j| Gate::cx(0, spec.out(j))));
    }
    c.origin = Some(json!({
        "kind": "leaky_relu",
        "bits": n,
        "alpha_exponent": spec.alpha_exponent,
        "encoding": spec.encoding,
    }));
    Ok(c)
}

/// `max(x, αx)` on `m` bits with `e` fraction bits, computed arithmetically.
pub fn leaky_reference(x: &[bool], spec: &LeakySpec) -> Vec<bool> {
    let (n, m, e) = (x.len(), spec.m(), spec.alpha_exponent as usize);
    let raw = value_msb_first(x);
    if !x[0] {
        return bits_msb_first(raw << e, m);
    }
    match spec.encoding {
        Encoding::TwosComplement => {
            // v < 0 scaled by 2^−e has the m-bit fixed-point pattern of v itself.
            let v = raw as i128 - (1i128 << n);
            bits_msb_first((v + (1i128 << m)) as u128, m)
        }
        Encoding::TrueForm => {
            let magnitude = raw & ((1u128 << (n - 1)) - 1);
            bits_msb_first((1u128 << (m - 1)) | magnitude, m)
        }
    }
}
