//! Constant T-depth ReLU.
//!
//! Inputs `x₁…xₙ` occupy qubits `0..n` (x₁ is the sign bit) and the output
//! register `n..2n−1` receives `x₂…xₙ` when x₁ = 0. One batch of `n − 1`
//! Toffolis controlled on the negated sign bit does all the work, so the
//! lowered T-depth is 4 for every `n`.

use std::str::FromStr;

use serde_json::json;

use crate::circuit::{Circuit, Gate, QubitId, Role};
use crate::error::{Error, Result};
use crate::sim::{parse_bits, ParseBitsError};

/// Signed fixed-point value, most significant (sign) bit first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedPointValue(Vec<bool>);

impl FixedPointValue {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.len() < 2 {
            return Err(Error::WidthTooSmall(bits.len()));
        }
        Ok(FixedPointValue(bits))
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn is_negative(&self) -> bool {
        self.0[0]
    }
}

impl FromStr for FixedPointValue {
    type Err = ParseBitsError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseBitsError> {
        parse_bits(s).map(FixedPointValue)
    }
}

/// `max(x, 0)` on the magnitude bits: `x₂…xₙ`, or zeros when x is negative.
pub fn relu_reference(x: &FixedPointValue) -> Vec<bool> {
    relu_bits(x.bits())
}

pub(crate) fn relu_bits(bits: &[bool]) -> Vec<bool> {
    if bits[0] {
        vec![false; bits.len() - 1]
    } else {
        bits[1..].to_vec()
    }
}

pub fn relu_inputs(n: usize) -> Vec<QubitId> {
    (0..n).map(QubitId).collect()
}

pub fn relu_outputs(n: usize) -> Vec<QubitId> {
    (n..2 * n - 1).map(QubitId).collect()
}

/// ReLU on `2n − 1` qubits: X on x₁, Toffolis `(x₁, xᵢ₊₁) → outᵢ`, X on x₁.
pub fn build_relu(n: usize) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::WidthTooSmall(n));
    }
    let mut c = Circuit::new(2 * n - 1);
    c.set_roles(relu_inputs(n), Role::Input);
    c.set_roles(relu_outputs(n), Role::Output);
    c.push(Gate::x(0));
    c.extend((1..n).map(|i| Gate::ccx(0, i, n + i - 1)));
    c.push(Gate::x(0));
    c.origin = Some(json!({ "kind": "relu", "bits": n }));
    Ok(c)
}
