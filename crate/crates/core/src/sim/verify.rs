//! Unitary equivalence and functional verification.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::basis::{bits_msb_first, bits_to_string, BasisState};
use super::state::{simulate_macro, simulate_sparse, simulate_statevector, simulate_statevector_exact, ExactState};
use crate::circuit::Circuit;
use crate::error::{Error, Result};

pub const EQUIV_QUBIT_LIMIT: usize = 10;
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EquivMode {
    Exact,
    Float,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivReport {
    pub equal: bool,
    pub mode: EquivMode,
    pub qubit_count: usize,
    pub columns_checked: usize,
    /// Global phase `e^{iθ}` with `A = e^{iθ}·B`, as θ in radians.
    pub global_phase: Option<f64>,
    /// The same phase as a power of `ω = e^{iπ/4}` (exact mode only).
    pub global_phase_omega_power: Option<u32>,
    /// Largest entrywise deviation after removing the phase (float mode).
    pub max_deviation: f64,
    pub first_mismatch_column: Option<usize>,
}

fn rotated(state: &ExactState, j: u32) -> ExactState {
    ExactState {
        numerators: state.numerators.iter().map(|z| z.mul_omega(j)).collect(),
        ..state.clone()
    }
}

/// Compares the unitaries of `a` and `b` column by column, up to global
/// phase, by simulating every basis input.
pub fn check_unitary_equiv(
    a: &Circuit,
    b: &Circuit,
    mode: EquivMode,
    qubit_limit: usize,
) -> Result<EquivReport> {
    if a.qubit_count != b.qubit_count {
        return Err(Error::WidthMismatch {
            expected: a.qubit_count,
            actual: b.qubit_count,
        });
    }
    let n = a.qubit_count;
    if n > qubit_limit {
        return Err(Error::TooManyQubits {
            qubits: n,
            limit: qubit_limit,
        });
    }
    let columns = 1usize << n;
    let column = |i: usize| BasisState::from_index(i as u128, n);

    match mode {
        EquivMode::Exact => {
            let sa = simulate_statevector_exact(a, &column(0))?;
            let sb = simulate_statevector_exact(b, &column(0))?;
            let phase = (0..8).find(|&j| rotated(&sb, j) == sa);
            let mismatch = match phase {
                None => Some(0),
                Some(j) => (1..columns)
                    .into_par_iter()
                    .map(|i| -> Result<Option<usize>> {
                        let sa = simulate_statevector_exact(a, &column(i))?;
                        let sb = simulate_statevector_exact(b, &column(i))?;
                        Ok((rotated(&sb, j) != sa).then_some(i))
                    })
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .flatten()
                    .next(),
            };
            Ok(EquivReport {
                equal: mismatch.is_none(),
                mode,
                qubit_count: n,
                columns_checked: columns,
                global_phase: phase.map(|j| j as f64 * std::f64::consts::FRAC_PI_4),
                global_phase_omega_power: phase,
                max_deviation: if mismatch.is_none() { 0.0 } else { f64::NAN },
                first_mismatch_column: mismatch,
            })
        }
        EquivMode::Float => {
            let va = simulate_statevector(a, &column(0))?;
            let vb = simulate_statevector(b, &column(0))?;
            let pivot = (0..vb.len())
                .max_by(|&x, &y| vb[x].norm().total_cmp(&vb[y].norm()))
                .unwrap_or(0);
            let ratio = va[pivot] / vb[pivot];
            let phase = if ratio.norm() > 0.0 && ratio.is_finite() {
                ratio / ratio.norm()
            } else {
                Complex64::new(1.0, 0.0)
            };
            let deviation = |va: &[Complex64], vb: &[Complex64]| {
                va.iter()
                    .zip(vb)
                    .map(|(x, y)| (x - phase * y).norm())
                    .fold(0.0, f64::max)
            };
            let mut devs = vec![deviation(&va, &vb)];
            devs.extend(
                (1..columns)
                    .into_par_iter()
                    .map(|i| -> Result<f64> {
                        let va = simulate_statevector(a, &column(i))?;
                        let vb = simulate_statevector(b, &column(i))?;
                        Ok(deviation(&va, &vb))
                    })
                    .collect::<Result<Vec<_>>>()?,
            );
            let max_deviation = devs.iter().copied().fold(0.0, f64::max);
            Ok(EquivReport {
                equal: max_deviation <= FLOAT_TOLERANCE,
                mode,
                qubit_count: n,
                columns_checked: columns,
                global_phase: Some(phase.arg()),
                global_phase_omega_power: None,
                max_deviation,
                first_mismatch_column: devs.iter().position(|&d| d > FLOAT_TOLERANCE),
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Input register bits in register order.
    pub input: String,
    pub expected: String,
    pub actual: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionalReport {
    pub passed: bool,
    pub exhaustive: bool,
    pub input_width: usize,
    pub inputs_checked: u64,
    pub counterexample: Option<Counterexample>,
}

/// Runs the circuit on one basis state. Permutation circuits use the
/// classical simulator; anything else runs exactly and must land on a
/// single basis state.
pub fn run_basis(circuit: &Circuit, input: &BasisState) -> std::result::Result<BasisState, String> {
    if circuit.is_permutation() {
        return simulate_macro(circuit, input).map_err(|e| e.to_string());
    }
    let state = simulate_sparse(circuit, input).map_err(|e| e.to_string())?;
    state
        .as_basis_state()
        .map(|(s, _)| s)
        .ok_or_else(|| format!("output is a superposition of {} basis states", state.amplitudes.len()))
}

/// Checks the circuit against `oracle` on zero-initialized non-input qubits.
///
/// The oracle maps input-register bits (register order) to output-register
/// bits. Inputs are enumerated when the register has at most
/// `exhaustive_limit` qubits and sampled with `seed` otherwise. The input
/// register must come back unchanged.
pub fn verify_functional<F>(
    circuit: &Circuit,
    oracle: F,
    exhaustive_limit: usize,
    sample_count: usize,
    seed: u64,
) -> FunctionalReport
where
    F: Fn(&[bool]) -> Vec<bool> + Sync,
{
    let inputs = circuit.input_register();
    let outputs = circuit.output_register();
    let width = inputs.len();
    let exhaustive = width <= exhaustive_limit.min(40);

    let patterns: Vec<Vec<bool>> = if exhaustive {
        (0..1u128 << width).map(|v| bits_msb_first(v, width)).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..sample_count)
            .map(|_| (0..width).map(|_| rng.gen::<bool>()).collect())
            .collect()
    };

    let check = |bits: &Vec<bool>| -> Option<Counterexample> {
        let mut state = BasisState::zeros(circuit.qubit_count);
        state.write(&inputs, bits);
        let expected = oracle(bits);
        let fail = |actual: String, reason: &str| Counterexample {
            input: bits_to_string(bits),
            expected: bits_to_string(&expected),
            actual,
            reason: reason.to_string(),
        };
        match run_basis(circuit, &state) {
            Err(e) => Some(fail(String::new(), &e)),
            Ok(out) => {
                let actual = out.read(&outputs);
                if actual != expected {
                    Some(fail(bits_to_string(&actual), "output register mismatch"))
                } else if out.read(&inputs) != *bits {
                    Some(fail(bits_to_string(&out.read(&inputs)), "input register modified"))
                } else {
                    None
                }
            }
        }
    };

    let counterexample = patterns.par_iter().find_map_first(check);
    FunctionalReport {
        passed: counterexample.is_none(),
        exhaustive,
        input_width: width,
        inputs_checked: patterns.len() as u64,
        counterexample,
    }
}
