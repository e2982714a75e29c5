//! Reusable circuit-construction primitives.
//!
//! * [`build_fanout`]: CNOT-only fan-out `|a, b⟩ → |a, b ⊕ a…⟩` in logarithmic depth
//!   with no ancillas.
//! * [`build_shared_control_toffoli_batch`]: `m` Toffolis sharing their first
//!   control, at T-depth 4 for any `m`.
//! * [`build_cswap_batch`]: `m` controlled SWAPs sharing a control, at T-depth 4.
//! * [`build_multi_controlled_x`]: k-controlled X from Toffolis and `k − 2` dirty
//!   ancillas.
//! * [`build_controlled_fanout`]: a fan-out whose root CNOT is a pattern-matched
//!   multi-controlled X, the building block of a SELECT step.

use std::collections::HashSet;

use crate::circuit::{Circuit, Gate, QubitId};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoutSpec {
    pub source: QubitId,
    pub targets: Vec<QubitId>,
}

impl FanoutSpec {
    pub fn new(source: impl Into<QubitId>, targets: impl IntoIterator<Item = QubitId>) -> Self {
        FanoutSpec {
            source: source.into(),
            targets: targets.into_iter().collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.targets.is_empty() {
            return Err(Error::EmptyTargets);
        }
        ensure_distinct(std::iter::once(self.source).chain(self.targets.iter().copied()))
            .map_err(Error::OverlappingPairs)
    }
}

fn ensure_distinct(qubits: impl IntoIterator<Item = QubitId>) -> std::result::Result<(), QubitId> {
    let mut seen = HashSet::new();
    for q in qubits {
        if !seen.insert(q) {
            return Err(q);
        }
    }
    Ok(())
}

fn register_size(gates: &[Gate]) -> usize {
    gates
        .iter()
        .flat_map(|g| g.operands())
        .map(|q| q.0 + 1)
        .max()
        .unwrap_or(0)
}

fn circuit_of(gates: Vec<Gate>) -> Circuit {
    Circuit::with_gates(register_size(&gates), gates)
}

/// Copy tree: maps the difference vector `e_root` onto the all-ones vector over
/// `list` (root = `list[0]`). The root copies into the first qubit of the
/// second half, then both halves recurse in parallel.
pub(crate) fn spread_tree(list: &[QubitId]) -> Vec<Gate> {
    fn go(list: &[QubitId], out: &mut Vec<Gate>) {
        if list.len() <= 1 {
            return;
        }
        let mid = list.len().div_ceil(2);
        out.push(Gate::cx(list[0], list[mid]));
        go(&list[..mid], out);
        go(&list[mid..], out);
    }
    let mut out = Vec::new();
    go(list, &mut out);
    out
}

pub(crate) fn reversed(gates: &[Gate]) -> Vec<Gate> {
    gates.iter().rev().map(Gate::inverse).collect()
}

/// Fan-out gates with no validation. `targets` must be non-empty.
pub(crate) fn fanout_gates(source: QubitId, targets: &[QubitId]) -> Vec<Gate> {
    let tree = spread_tree(targets);
    let mut gates = reversed(&tree);
    gates.push(Gate::cx(source, targets[0]));
    gates.extend(tree);
    gates
}

/// Fan-out `F_n`: XORs `source` into every target using CNOTs only.
///
/// Depth is at most `2⌈log₂ n⌉ + 1` and size `2n − 1`.
pub fn build_fanout(spec: &FanoutSpec) -> Result<Circuit> {
    spec.validate()?;
    Ok(circuit_of(fanout_gates(spec.source, &spec.targets)))
}

fn check_batch(control: QubitId, pairs: &[(QubitId, QubitId)]) -> Result<()> {
    if pairs.is_empty() {
        return Err(Error::EmptyTargets);
    }
    ensure_distinct(
        std::iter::once(control).chain(pairs.iter().flat_map(|&(a, b)| [a, b])),
    )
    .map_err(Error::OverlappingPairs)
}

/// Lowered network for `m` Toffolis `(control, c_i) → t_i`.
///
/// This is the standard 7-T Toffoli network with every CNOT leaving the shared
/// control replaced by a fan-out, and the `m` T gates on the shared control
/// merged into one `PhasePower(m)`.
pub(crate) fn shared_control_batch_gates(control: QubitId, pairs: &[(QubitId, QubitId)]) -> Vec<Gate> {
    shared_control_batch_with(control, pairs, fanout_gates)
}

/// Batch network with a caller-supplied fan-out (used for grid routing).
pub(crate) fn shared_control_batch_with(
    control: QubitId,
    pairs: &[(QubitId, QubitId)],
    fanout: impl Fn(QubitId, &[QubitId]) -> Vec<Gate>,
) -> Vec<Gate> {
    let seconds: Vec<QubitId> = pairs.iter().map(|p| p.0).collect();
    let targets: Vec<QubitId> = pairs.iter().map(|p| p.1).collect();
    let mut g = Vec::new();
    g.extend(targets.iter().map(|&t| Gate::H(t)));
    g.extend(pairs.iter().map(|&(c, t)| Gate::cx(c, t)));
    g.extend(targets.iter().map(|&t| Gate::Tdg(t)));
    g.extend(fanout(control, &targets));
    g.extend(targets.iter().map(|&t| Gate::T(t)));
    g.extend(pairs.iter().map(|&(c, t)| Gate::cx(c, t)));
    for &(c, t) in pairs {
        g.push(Gate::T(c));
        g.push(Gate::Tdg(t));
    }
    g.extend(fanout(control, &targets));
    g.extend(fanout(control, &seconds));
    g.push(Gate::phase_power(control, pairs.len() as i64));
    for &(c, t) in pairs {
        g.push(Gate::Tdg(c));
        g.push(Gate::T(t));
    }
    g.extend(fanout(control, &seconds));
    g.extend(targets.iter().map(|&t| Gate::H(t)));
    g
}

/// `m` Toffolis sharing `control` as first control; `pairs` holds
/// `(second control, target)`. Lowers to T-depth 4 for any `m ≥ 1`.
pub fn build_shared_control_toffoli_batch(
    control: impl Into<QubitId>,
    pairs: &[(QubitId, QubitId)],
) -> Result<Circuit> {
    let control = control.into();
    check_batch(control, pairs)?;
    Ok(circuit_of(shared_control_batch_gates(control, pairs)))
}

pub(crate) fn cswap_batch_gates(control: QubitId, pairs: &[(QubitId, QubitId)]) -> Vec<Gate> {
    let mut g: Vec<Gate> = pairs.iter().map(|&(a, b)| Gate::cx(b, a)).collect();
    g.extend(shared_control_batch_gates(control, pairs));
    g.extend(pairs.iter().map(|&(a, b)| Gate::cx(b, a)));
    g
}

/// `m` controlled SWAPs `(a_i ↔ b_i)` sharing `control`, as a CNOT-conjugated
/// shared-control Toffoli batch.
pub fn build_cswap_batch(control: impl Into<QubitId>, pairs: &[(QubitId, QubitId)]) -> Result<Circuit> {
    let control = control.into();
    check_batch(control, pairs)?;
    Ok(circuit_of(cswap_batch_gates(control, pairs)))
}

/// Toffoli network for a k-controlled X using `k − 2` dirty ancillas (for
/// `k ≥ 3`). Ancillas are returned to their initial value.
pub(crate) fn mcx_gates(controls: &[QubitId], target: QubitId, ancillas: &[QubitId]) -> Vec<Gate> {
    let m = controls.len();
    match m {
        0 => return Vec::new(),
        1 => return vec![Gate::cx(controls[0], target)],
        2 => return vec![Gate::ccx(controls[0], controls[1], target)],
        _ => {}
    }
    let c = controls;
    let a = &ancillas[..m - 2];
    let top = Gate::ccx(c[m - 1], a[m - 3], target);
    let bottom = Gate::ccx(c[0], c[1], a[0]);
    let step = |i: usize| Gate::ccx(c[i], a[i - 2], a[i - 1]);
    let down = || (2..m - 1).rev().map(step);
    let up = || (2..m - 1).map(step);

    let mut g = Vec::with_capacity(4 * (m - 2));
    g.push(top.clone());
    g.extend(down());
    g.push(bottom.clone());
    g.extend(up());
    g.push(top);
    g.extend(down());
    g.push(bottom);
    g.extend(up());
    g
}

fn check_mcx(controls: &[QubitId], target: QubitId, ancillas: &[QubitId]) -> Result<()> {
    let k = controls.len();
    if k == 0 {
        return Err(Error::NoControls);
    }
    let needed = k.saturating_sub(2);
    if ancillas.len() < needed {
        return Err(Error::InsufficientAncillas {
            controls: k,
            needed,
            supplied: ancillas.len(),
        });
    }
    ensure_distinct(
        controls
            .iter()
            .copied()
            .chain(std::iter::once(target))
            .chain(ancillas[..needed].iter().copied()),
    )
    .map_err(Error::OverlappingOperands)
}

/// `Λ_k(X)`: flips `target` iff every control is 1. For `k ≥ 3` the first
/// `k − 2` entries of `dirty_ancillas` are borrowed and restored.
pub fn build_multi_controlled_x(
    controls: &[QubitId],
    target: impl Into<QubitId>,
    dirty_ancillas: &[QubitId],
) -> Result<Circuit> {
    let target = target.into();
    check_mcx(controls, target, dirty_ancillas)?;
    Ok(circuit_of(mcx_gates(controls, target, dirty_ancillas)))
}

/// Gates for a pattern-controlled fan-out with an explicit pivot.
///
/// The multi-controlled X hits `pivot`; the surrounding CNOT trees turn that
/// single flip into a flip of every qubit in `targets`. `pivot` need not be a
/// target. Ancillas must avoid the controls and the pivot; they may overlap
/// the targets because the multi-controlled X restores them.
pub(crate) fn controlled_fanout_gates(
    controls: &[QubitId],
    pattern: &[bool],
    pivot: QubitId,
    targets: &[QubitId],
    ancillas: &[QubitId],
) -> Vec<Gate> {
    debug_assert!(!targets.is_empty());
    let flips: Vec<Gate> = controls
        .iter()
        .zip(pattern)
        .filter(|(_, &bit)| !bit)
        .map(|(&c, _)| Gate::X(c))
        .collect();

    // `post` maps e_pivot onto the indicator of `targets`.
    let post: Vec<Gate> = if targets.contains(&pivot) {
        let mut list = vec![pivot];
        list.extend(targets.iter().copied().filter(|&t| t != pivot));
        spread_tree(&list)
    } else {
        let mut g = vec![Gate::cx(pivot, targets[0])];
        g.extend(spread_tree(targets));
        g.push(Gate::cx(targets[0], pivot));
        g
    };

    let mut g = flips.clone();
    g.extend(reversed(&post));
    g.extend(mcx_gates(controls, pivot, ancillas));
    g.extend(post);
    g.extend(flips);
    g
}

/// Flips every target iff the controls spell out `address_pattern`
/// (`true` = control must be 1). The root of the fan-out is `targets[0]`.
pub fn build_controlled_fanout(
    controls: &[QubitId],
    address_pattern: &[bool],
    targets: &[QubitId],
    dirty_ancillas: &[QubitId],
) -> Result<Circuit> {
    if address_pattern.len() != controls.len() {
        return Err(Error::PatternLength {
            pattern: address_pattern.len(),
            controls: controls.len(),
        });
    }
    if targets.is_empty() {
        return Err(Error::EmptyTargets);
    }
    check_mcx(controls, targets[0], dirty_ancillas)?;
    let needed = controls.len().saturating_sub(2);
    ensure_distinct(
        controls
            .iter()
            .chain(targets)
            .chain(&dirty_ancillas[..needed])
            .copied(),
    )
    .map_err(Error::OverlappingOperands)?;
    Ok(circuit_of(controlled_fanout_gates(
        controls,
        address_pattern,
        targets[0],
        targets,
        dirty_ancillas,
    )))
}
