//! Gate and circuit representation.
//!
//! A [`Circuit`] is an ordered list of [`Gate`]s over a register of
//! `qubit_count` qubits, each qubit tagged with a [`Role`]. Circuits may hold
//! macro gates (Toffoli, multi-controlled X, controlled SWAP, phase powers);
//! [`crate::lower`] rewrites them into the Clifford+T set.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Position of a qubit in a circuit's register.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QubitId(pub usize);

impl QubitId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for QubitId {
    fn from(index: usize) -> Self {
        QubitId(index)
    }
}

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Input,
    Output,
    SwapAddress,
    Garbage,
    Unused,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(QubitId),
    S(QubitId),
    Sdg(QubitId),
    T(QubitId),
    Tdg(QubitId),
    X(QubitId),
    Cnot { control: QubitId, target: QubitId },
    Swap(QubitId, QubitId),
    Toffoli { controls: [QubitId; 2], target: QubitId },
    Mcx { controls: Vec<QubitId>, target: QubitId },
    Cswap { control: QubitId, a: QubitId, b: QubitId },
    /// `T^k` on one qubit; diag(1, e^{ikπ/4}).
    PhasePower { qubit: QubitId, k: i64 },
}

impl Gate {
    pub fn h(q: impl Into<QubitId>) -> Self {
        Gate::H(q.into())
    }
    pub fn s(q: impl Into<QubitId>) -> Self {
        Gate::S(q.into())
    }
    pub fn sdg(q: impl Into<QubitId>) -> Self {
        Gate::Sdg(q.into())
    }
    pub fn t(q: impl Into<QubitId>) -> Self {
        Gate::T(q.into())
    }
    pub fn tdg(q: impl Into<QubitId>) -> Self {
        Gate::Tdg(q.into())
    }
    pub fn x(q: impl Into<QubitId>) -> Self {
        Gate::X(q.into())
    }
    pub fn cx(control: impl Into<QubitId>, target: impl Into<QubitId>) -> Self {
        Gate::Cnot {
            control: control.into(),
            target: target.into(),
        }
    }
    pub fn swap(a: impl Into<QubitId>, b: impl Into<QubitId>) -> Self {
        Gate::Swap(a.into(), b.into())
    }
    pub fn ccx(c0: impl Into<QubitId>, c1: impl Into<QubitId>, target: impl Into<QubitId>) -> Self {
        Gate::Toffoli {
            controls: [c0.into(), c1.into()],
            target: target.into(),
        }
    }
    pub fn mcx(controls: impl IntoIterator<Item = QubitId>, target: impl Into<QubitId>) -> Self {
        Gate::Mcx {
            controls: controls.into_iter().collect(),
            target: target.into(),
        }
    }
    pub fn cswap(control: impl Into<QubitId>, a: impl Into<QubitId>, b: impl Into<QubitId>) -> Self {
        Gate::Cswap {
            control: control.into(),
            a: a.into(),
            b: b.into(),
        }
    }
    pub fn phase_power(q: impl Into<QubitId>, k: i64) -> Self {
        Gate::PhasePower { qubit: q.into(), k }
    }

    /// Short lowercase name, also used as the `kind` field of the JSON format.
    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::S(_) => "s",
            Gate::Sdg(_) => "sdg",
            Gate::T(_) => "t",
            Gate::Tdg(_) => "tdg",
            Gate::X(_) => "x",
            Gate::Cnot { .. } => "cx",
            Gate::Swap(..) => "swap",
            Gate::Toffoli { .. } => "ccx",
            Gate::Mcx { .. } => "mcx",
            Gate::Cswap { .. } => "cswap",
            Gate::PhasePower { .. } => "phase_power",
        }
    }

    /// Operands in canonical order: controls first, then targets.
    pub fn operands(&self) -> Vec<QubitId> {
        match self {
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::T(q) | Gate::Tdg(q) | Gate::X(q) => {
                vec![*q]
            }
            Gate::PhasePower { qubit, .. } => vec![*qubit],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::Swap(a, b) => vec![*a, *b],
            Gate::Toffoli { controls, target } => vec![controls[0], controls[1], *target],
            Gate::Mcx { controls, target } => {
                let mut ops = controls.clone();
                ops.push(*target);
                ops
            }
            Gate::Cswap { control, a, b } => vec![*control, *a, *b],
        }
    }

    pub fn is_t_like(&self) -> bool {
        matches!(self, Gate::T(_) | Gate::Tdg(_))
    }

    /// True for the gates of the lowered set {H, S, S†, T, T†, CNOT}.
    pub fn is_clifford_t(&self) -> bool {
        matches!(
            self,
            Gate::H(_) | Gate::S(_) | Gate::Sdg(_) | Gate::T(_) | Gate::Tdg(_) | Gate::Cnot { .. }
        )
    }

    /// True for gates acting as classical reversible maps on basis states.
    pub fn is_permutation(&self) -> bool {
        matches!(
            self,
            Gate::X(_)
                | Gate::Cnot { .. }
                | Gate::Swap(..)
                | Gate::Toffoli { .. }
                | Gate::Mcx { .. }
                | Gate::Cswap { .. }
        )
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::S(q) => Gate::Sdg(*q),
            Gate::Sdg(q) => Gate::S(*q),
            Gate::T(q) => Gate::Tdg(*q),
            Gate::Tdg(q) => Gate::T(*q),
            Gate::PhasePower { qubit, k } => Gate::PhasePower {
                qubit: *qubit,
                k: -k,
            },
            other => other.clone(),
        }
    }

    /// Rewrites every operand through `f`.
    pub fn map_qubits(&self, mut f: impl FnMut(QubitId) -> QubitId) -> Gate {
        match self {
            Gate::H(q) => Gate::H(f(*q)),
            Gate::S(q) => Gate::S(f(*q)),
            Gate::Sdg(q) => Gate::Sdg(f(*q)),
            Gate::T(q) => Gate::T(f(*q)),
            Gate::Tdg(q) => Gate::Tdg(f(*q)),
            Gate::X(q) => Gate::X(f(*q)),
            Gate::Cnot { control, target } => Gate::Cnot {
                control: f(*control),
                target: f(*target),
            },
            Gate::Swap(a, b) => Gate::Swap(f(*a), f(*b)),
            Gate::Toffoli { controls, target } => Gate::Toffoli {
                controls: [f(controls[0]), f(controls[1])],
                target: f(*target),
            },
            Gate::Mcx { controls, target } => Gate::Mcx {
                controls: controls.iter().map(|&c| f(c)).collect(),
                target: f(*target),
            },
            Gate::Cswap { control, a, b } => Gate::Cswap {
                control: f(*control),
                a: f(*a),
                b: f(*b),
            },
            Gate::PhasePower { qubit, k } => Gate::PhasePower {
                qubit: f(*qubit),
                k: *k,
            },
        }
    }

    fn validate(&self, qubit_count: usize) -> Result<()> {
        if let Gate::Mcx { controls, .. } = self {
            if controls.is_empty() {
                return Err(Error::NoControls);
            }
        }
        let ops = self.operands();
        for (i, q) in ops.iter().enumerate() {
            if q.0 >= qubit_count {
                return Err(Error::OutOfRangeQubit {
                    qubit: *q,
                    qubit_count,
                });
            }
            if ops[..i].contains(q) {
                return Err(Error::DuplicateOperand {
                    gate: self.to_string(),
                    qubit: *q,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ops: Vec<String> = self.operands().iter().map(|q| q.to_string()).collect();
        match self {
            Gate::PhasePower { k, .. } => write!(f, "{}({})[{}]", self.name(), k, ops.join(",")),
            _ => write!(f, "{}[{}]", self.name(), ops.join(",")),
        }
    }
}

/// Serialized form of a gate: `{kind, operands, param?}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct GateRecord {
    kind: String,
    operands: Vec<QubitId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    param: Option<i64>,
}

impl From<&Gate> for GateRecord {
    fn from(g: &Gate) -> Self {
        GateRecord {
            kind: g.name().to_string(),
            operands: g.operands(),
            param: match g {
                Gate::PhasePower { k, .. } => Some(*k),
                _ => None,
            },
        }
    }
}

impl TryFrom<GateRecord> for Gate {
    type Error = Error;

    fn try_from(r: GateRecord) -> Result<Gate> {
        let arity = |n: usize| -> Result<()> {
            if r.operands.len() == n {
                Ok(())
            } else {
                Err(Error::ArityMismatch {
                    gate: r.kind.clone(),
                    expected: n,
                    actual: r.operands.len(),
                })
            }
        };
        let o = &r.operands;
        let gate = match r.kind.as_str() {
            "h" => arity(1).map(|_| Gate::H(o[0]))?,
            "s" => arity(1).map(|_| Gate::S(o[0]))?,
            "sdg" => arity(1).map(|_| Gate::Sdg(o[0]))?,
            "t" => arity(1).map(|_| Gate::T(o[0]))?,
            "tdg" => arity(1).map(|_| Gate::Tdg(o[0]))?,
            "x" => arity(1).map(|_| Gate::X(o[0]))?,
            "cx" => arity(2).map(|_| Gate::cx(o[0], o[1]))?,
            "swap" => arity(2).map(|_| Gate::Swap(o[0], o[1]))?,
            "ccx" => arity(3).map(|_| Gate::ccx(o[0], o[1], o[2]))?,
            "cswap" => arity(3).map(|_| Gate::cswap(o[0], o[1], o[2]))?,
            "mcx" => {
                if o.len() < 2 {
                    return Err(Error::ArityMismatch {
                        gate: r.kind.clone(),
                        expected: 2,
                        actual: o.len(),
                    });
                }
                Gate::mcx(o[..o.len() - 1].iter().copied(), o[o.len() - 1])
            }
            "phase_power" => {
                arity(1)?;
                Gate::phase_power(o[0], r.param.unwrap_or(1))
            }
            other => {
                return Err(Error::UnloweredMacro {
                    kind: other.to_string(),
                })
            }
        };
        Ok(gate)
    }
}

impl Serialize for Gate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GateRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Gate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = GateRecord::deserialize(d)?;
        Gate::try_from(rec).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub qubit_count: usize,
    pub roles: Vec<Role>,
    pub gates: Vec<Gate>,
    /// Free-form description of what produced the circuit (used by the CLI
    /// to pick a verification oracle for a saved artifact).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<serde_json::Value>,
}

impl Circuit {
    pub fn new(qubit_count: usize) -> Self {
        Circuit {
            qubit_count,
            roles: vec![Role::Unused; qubit_count],
            gates: Vec::new(),
            origin: None,
        }
    }

    pub fn with_gates(qubit_count: usize, gates: Vec<Gate>) -> Self {
        Circuit {
            gates,
            ..Circuit::new(qubit_count)
        }
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) {
        self.gates.extend(gates);
    }

    /// Appends the gates of `other`, which must live on the same register.
    pub fn append(&mut self, other: &Circuit) {
        self.gates.extend(other.gates.iter().cloned());
    }

    pub fn set_role(&mut self, q: impl Into<QubitId>, role: Role) {
        self.roles[q.into().0] = role;
    }

    pub fn set_roles(&mut self, qubits: impl IntoIterator<Item = QubitId>, role: Role) {
        for q in qubits {
            self.roles[q.0] = role;
        }
    }

    pub fn role(&self, q: QubitId) -> Role {
        self.roles[q.0]
    }

    pub fn qubits_with_role(&self, role: Role) -> Vec<QubitId> {
        (0..self.qubit_count)
            .filter(|&i| self.roles[i] == role)
            .map(QubitId)
            .collect()
    }

    /// Input register in index order; swap-address qubits are part of it.
    pub fn input_register(&self) -> Vec<QubitId> {
        (0..self.qubit_count)
            .filter(|&i| matches!(self.roles[i], Role::Input | Role::SwapAddress))
            .map(QubitId)
            .collect()
    }

    pub fn output_register(&self) -> Vec<QubitId> {
        self.qubits_with_role(Role::Output)
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn is_permutation(&self) -> bool {
        self.gates.iter().all(Gate::is_permutation)
    }

    /// Gates in reverse order, each inverted.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            ..self.clone()
        }
    }

    /// Checks operand ranges, operand distinctness and the role map.
    pub fn validate(&self) -> Result<()> {
        if self.roles.len() != self.qubit_count {
            return Err(Error::RoleMapSize {
                expected: self.qubit_count,
                actual: self.roles.len(),
            });
        }
        self.gates
            .iter()
            .try_for_each(|g| g.validate(self.qubit_count))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit serializes")
    }

    pub fn from_json(text: &str) -> std::result::Result<Circuit, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Validates a bare gate list against a register size.
pub fn validate_gates(gates: &[Gate], qubit_count: usize) -> Result<()> {
    gates.iter().try_for_each(|g| g.validate(qubit_count))
}
