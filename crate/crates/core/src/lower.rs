//! Lowering of macro gates to {H, S, S†, T, T†, CNOT}.
//!
//! * X becomes H·S·S·H and SWAP three CNOTs.
//! * A run of consecutive Toffolis that share their first control (and are
//!   otherwise disjoint) is lowered as one shared-control batch; a lone
//!   Toffoli is the batch of size one, i.e. the 7-T network.
//! * Runs of controlled SWAPs sharing a control become a CSWAP batch.
//! * A k-controlled X (k ≥ 3) expands into Toffolis, borrowing the
//!   lowest-indexed qubits it does not touch as dirty ancillas.
//! * `PhasePower(k)` becomes at most one T plus S gates.

use crate::circuit::{Circuit, Gate, QubitId, Role};
use crate::error::{Error, Result};
use crate::schedule::{schedule_layers, LayeredCircuit, Metrics};
use crate::synth::{cswap_batch_gates, mcx_gates, shared_control_batch_gates};

#[derive(Clone, Debug, PartialEq)]
pub struct LoweredCircuit {
    pub qubit_count: usize,
    pub roles: Vec<Role>,
    /// Only H, S, S†, T, T† and CNOT.
    pub gates: Vec<Gate>,
}

impl LoweredCircuit {
    pub fn layered(&self) -> LayeredCircuit {
        let mut l = schedule_layers(&self.gates);
        l.qubit_count = self.qubit_count;
        l
    }

    pub fn metrics(&self) -> Metrics {
        self.layered().metrics()
    }

    pub fn to_circuit(&self) -> Circuit {
        Circuit {
            qubit_count: self.qubit_count,
            roles: self.roles.clone(),
            gates: self.gates.clone(),
            origin: None,
        }
    }
}

/// `diag(1, ω^k)` as S/T gates, with at most one T.
pub fn lower_phase_power(qubit: QubitId, k: i64) -> Vec<Gate> {
    let r = k.rem_euclid(8);
    let mut out = Vec::new();
    if r & 4 != 0 {
        out.extend([Gate::S(qubit), Gate::S(qubit)]);
    }
    if r & 2 != 0 {
        out.push(Gate::S(qubit));
    }
    if r & 1 != 0 {
        out.push(Gate::T(qubit));
    }
    out
}

fn expand_mcx(gates: &[Gate], qubit_count: usize) -> Result<Vec<Gate>> {
    let mut out = Vec::with_capacity(gates.len());
    for g in gates {
        match g {
            Gate::Mcx { controls, target } => {
                let k = controls.len();
                let needed = k.saturating_sub(2);
                let ancillas: Vec<QubitId> = (0..qubit_count)
                    .map(QubitId)
                    .filter(|q| q != target && !controls.contains(q))
                    .take(needed)
                    .collect();
                if ancillas.len() < needed {
                    return Err(Error::InsufficientAncillas {
                        controls: k,
                        needed,
                        supplied: ancillas.len(),
                    });
                }
                out.extend(mcx_gates(controls, *target, &ancillas));
            }
            other => out.push(other.clone()),
        }
    }
    Ok(out)
}

/// Collects the longest run starting at `gates[start]` of gates that share
/// `shared` and whose remaining two operands are disjoint from everything
/// else in the run.
fn collect_run(
    gates: &[Gate],
    start: usize,
    split: impl Fn(&Gate) -> Option<(QubitId, QubitId, QubitId)>,
) -> (QubitId, Vec<(QubitId, QubitId)>) {
    let (shared, a, b) = split(&gates[start]).expect("run starts at a matching gate");
    let mut used = vec![a, b];
    let mut pairs = vec![(a, b)];
    for g in &gates[start + 1..] {
        match split(g) {
            Some((s, a, b)) if s == shared && !used.contains(&a) && !used.contains(&b) => {
                used.extend([a, b]);
                pairs.push((a, b));
            }
            _ => break,
        }
    }
    (shared, pairs)
}

fn toffoli_parts(g: &Gate) -> Option<(QubitId, QubitId, QubitId)> {
    match g {
        Gate::Toffoli { controls, target } => Some((controls[0], controls[1], *target)),
        _ => None,
    }
}

fn cswap_parts(g: &Gate) -> Option<(QubitId, QubitId, QubitId)> {
    match g {
        Gate::Cswap { control, a, b } => Some((*control, *a, *b)),
        _ => None,
    }
}

fn lower_gate(g: &Gate, out: &mut Vec<Gate>) {
    match g {
        Gate::X(q) => out.extend([Gate::H(*q), Gate::S(*q), Gate::S(*q), Gate::H(*q)]),
        Gate::Swap(a, b) => out.extend([Gate::cx(*a, *b), Gate::cx(*b, *a), Gate::cx(*a, *b)]),
        Gate::PhasePower { qubit, k } => out.extend(lower_phase_power(*qubit, *k)),
        g if g.is_clifford_t() => out.push(g.clone()),
        other => unreachable!("{other} survives macro expansion"),
    }
}

/// Rewrites a validated circuit into the Clifford+T gate set.
pub fn lower(circuit: &Circuit) -> Result<LoweredCircuit> {
    circuit.validate()?;
    let expanded = expand_mcx(&circuit.gates, circuit.qubit_count)?;

    let mut gates = Vec::with_capacity(expanded.len() * 4);
    let mut i = 0;
    while i < expanded.len() {
        let g = &expanded[i];
        if toffoli_parts(g).is_some() {
            let (control, pairs) = collect_run(&expanded, i, toffoli_parts);
            i += pairs.len();
            for g in shared_control_batch_gates(control, &pairs) {
                lower_gate(&g, &mut gates);
            }
        } else if cswap_parts(g).is_some() {
            let (control, pairs) = collect_run(&expanded, i, cswap_parts);
            i += pairs.len();
            for g in cswap_batch_gates(control, &pairs) {
                lower_gate(&g, &mut gates);
            }
        } else {
            lower_gate(g, &mut gates);
            i += 1;
        }
    }
    Ok(LoweredCircuit {
        qubit_count: circuit.qubit_count,
        roles: circuit.roles.clone(),
        gates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lowered(qubits: usize, gates: Vec<Gate>) -> LoweredCircuit {
        lower(&Circuit::with_gates(qubits, gates)).unwrap()
    }

    #[test]
    fn phase_power_four_is_two_s() {
        assert_eq!(lower_phase_power(QubitId(0), 4), vec![Gate::s(0), Gate::s(0)]);
        assert!(lower_phase_power(QubitId(0), 8).is_empty());
        assert_eq!(lower_phase_power(QubitId(0), -1).len(), 4);
    }

    #[test]
    fn x_becomes_hssh() {
        let l = lowered(1, vec![Gate::x(0)]);
        assert_eq!(l.gates, vec![Gate::h(0), Gate::s(0), Gate::s(0), Gate::h(0)]);
    }

    #[test]
    fn swap_becomes_three_cnots() {
        let l = lowered(2, vec![Gate::swap(0, 1)]);
        assert_eq!(l.gates.len(), 3);
        assert!(l.gates.iter().all(|g| matches!(g, Gate::Cnot { .. })));
    }

    #[test]
    fn toffoli_has_seven_t_and_t_depth_four() {
        let l = lowered(3, vec![Gate::ccx(0, 1, 2)]);
        let m = l.metrics();
        assert_eq!(m.t_count, 7);
        assert_eq!(m.t_depth, 4);
        assert_eq!(l.gates.iter().filter(|g| matches!(g, Gate::H(_))).count(), 2);
    }

    #[test]
    fn shared_control_run_keeps_t_depth_four() {
        let gates = (0..6).map(|i| Gate::ccx(0, 1 + 2 * i, 2 + 2 * i)).collect();
        let m = lowered(13, gates).metrics();
        assert_eq!(m.t_depth, 4);
    }

    #[test]
    fn overlapping_toffolis_are_not_batched() {
        let m = lowered(4, vec![Gate::ccx(0, 1, 2), Gate::ccx(0, 2, 3)]).metrics();
        assert_eq!(m.t_depth, 8);
    }

    #[test]
    fn mcx_without_room_for_ancillas_fails() {
        let c = Circuit::with_gates(4, vec![Gate::mcx((0..3).map(QubitId), 3)]);
        assert_eq!(
            lower(&c).unwrap_err(),
            Error::InsufficientAncillas { controls: 3, needed: 1, supplied: 0 }
        );
    }

    #[test]
    fn lowered_gates_are_clifford_t() {
        let c = Circuit::with_gates(
            7,
            vec![
                Gate::x(0),
                Gate::mcx((0..4).map(QubitId), 4),
                Gate::cswap(0, 1, 2),
                Gate::phase_power(3, 7),
            ],
        );
        assert!(lower(&c).unwrap().gates.iter().all(Gate::is_clifford_t));
    }

    #[test]
    fn invalid_circuit_is_rejected() {
        let c = Circuit::with_gates(2, vec![Gate::cx(0, 2)]);
        assert!(matches!(lower(&c), Err(Error::OutOfRangeQubit { .. })));
    }
}
