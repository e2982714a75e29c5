use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuit::QubitId;

/// Computational basis state; bit `i` is the value of qubit `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct BasisState {
    bits: Vec<bool>,
}

impl BasisState {
    pub fn zeros(width: usize) -> Self {
        BasisState {
            bits: vec![false; width],
        }
    }

    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        BasisState {
            bits: bits.into_iter().collect(),
        }
    }

    /// Low `width` bits of `index`, qubit `i` taking bit `i`.
    pub fn from_index(index: u128, width: usize) -> Self {
        BasisState::from_bits((0..width).map(|i| i < 128 && (index >> i) & 1 == 1))
    }

    pub fn width(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, q: impl Into<QubitId>) -> bool {
        self.bits[q.into().0]
    }

    pub fn set(&mut self, q: impl Into<QubitId>, value: bool) {
        self.bits[q.into().0] = value;
    }

    pub fn flip(&mut self, q: QubitId) {
        self.bits[q.0] ^= true;
    }

    pub fn swap(&mut self, a: QubitId, b: QubitId) {
        self.bits.swap(a.0, b.0);
    }

    /// Inverse of [`BasisState::from_index`]; `None` past 128 qubits.
    pub fn index(&self) -> Option<u128> {
        if self.bits.len() > 128 {
            return None;
        }
        Some(
            self.bits
                .iter()
                .enumerate()
                .fold(0u128, |acc, (i, &b)| acc | (u128::from(b) << i)),
        )
    }

    pub fn read(&self, qubits: &[QubitId]) -> Vec<bool> {
        qubits.iter().map(|q| self.bits[q.0]).collect()
    }

    pub fn write(&mut self, qubits: &[QubitId], values: &[bool]) {
        for (q, &v) in qubits.iter().zip(values) {
            self.bits[q.0] = v;
        }
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bits_to_string(&self.bits))
    }
}

impl From<BasisState> for String {
    fn from(s: BasisState) -> String {
        s.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid bit character {0:?}")]
pub struct ParseBitsError(pub char);

impl FromStr for BasisState {
    type Err = ParseBitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_bits(s).map(BasisState::from_bits)
    }
}

impl TryFrom<String> for BasisState {
    type Error = ParseBitsError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

pub fn parse_bits(s: &str) -> Result<Vec<bool>, ParseBitsError> {
    s.chars()
        .filter(|c| *c != '_')
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(ParseBitsError(other)),
        })
        .collect()
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// `width` bits of `value`, most significant first.
pub fn bits_msb_first(value: u128, width: usize) -> Vec<bool> {
    (0..width)
        .rev()
        .map(|i| i < 128 && (value >> i) & 1 == 1)
        .collect()
}

/// Inverse of [`bits_msb_first`].
pub fn value_msb_first(bits: &[bool]) -> u128 {
    bits.iter().fold(0, |acc, &b| (acc << 1) | u128::from(b))
}
