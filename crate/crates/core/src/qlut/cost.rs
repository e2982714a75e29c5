//! Closed-form SELECTSWAP cost and empirical table error.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::float::FloatFormat;
use super::table::{build_table, ActivationFn};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QlutCost {
    pub t_depth: u128,
    pub ancilla: u128,
}

/// T-depth of a k-controlled X: 0, 4, then `16k − 32`.
pub fn mcx_t_depth(k: usize) -> u128 {
    match k {
        0 | 1 => 0,
        2 => 4,
        k => 16 * k as u128 - 32,
    }
}

/// `t_depth = 2^(n−l)·τ(n−l) + 4l`, `ancilla = n·2^l`.
pub fn cost_model(n: usize, l: usize) -> Result<QlutCost> {
    if l == 0 || l >= n {
        return Err(Error::InvalidSwapCount { n, l });
    }
    let overflow = Error::CostOverflow { n, l };
    let k = n - l;
    let steps = 1u128.checked_shl(k as u32).filter(|_| k < 128).ok_or(overflow.clone())?;
    let t_depth = steps
        .checked_mul(mcx_t_depth(k))
        .and_then(|s| s.checked_add(4 * l as u128))
        .ok_or(overflow.clone())?;
    let ancilla = 1u128
        .checked_shl(l as u32)
        .filter(|_| l < 128)
        .and_then(|r| r.checked_mul(n as u128))
        .ok_or(overflow)?;
    Ok(QlutCost { t_depth, ancilla })
}

/// Swap-qubit counts `l = j·n/8`, `j = 1…7`.
pub fn standard_swap_counts(n: usize) -> Vec<usize> {
    (1..8).map(|j| j * n / 8).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxError {
    pub value: f64,
    /// Input at which the largest error was seen.
    pub argmax: f64,
    pub points: u64,
}

pub const ERROR_DOMAIN: f64 = 15.0 / 4.0;

/// Largest `|decode(table[encode(x)]) − f(x)|` over `|x| < 15/4`.
///
/// Evaluated at `samples` seeded uniform points and at every representable
/// input inside the domain.
pub fn max_error(f: ActivationFn, fmt: FloatFormat, samples: usize, seed: u64) -> Result<MaxError> {
    let table = build_table(f, fmt)?;
    let lookup = |x: f64| fmt.decode(table.get(fmt.encode(x) as u64) as u128);

    let mut points: Vec<f64> = (0..fmt.pattern_count().unwrap_or(0))
        .map(|p| fmt.decode(p as u128))
        .filter(|v| v.abs() < ERROR_DOMAIN)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    points.extend((0..samples).map(|_| rng.gen_range(-ERROR_DOMAIN..ERROR_DOMAIN)));

    let (value, argmax) = points
        .par_iter()
        .map(|&x| ((lookup(x) - f.eval(x)).abs(), x))
        .reduce(|| (0.0, 0.0), |a, b| if b.0 > a.0 { b } else { a });
    Ok(MaxError {
        value,
        argmax,
        points: points.len() as u64,
    })
}
