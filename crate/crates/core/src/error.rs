use thiserror::Error;

use crate::circuit::QubitId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("qubit {qubit} is out of range for a {qubit_count}-qubit circuit")]
    OutOfRangeQubit { qubit: QubitId, qubit_count: usize },
    #[error("gate {gate} uses qubit {qubit} more than once")]
    DuplicateOperand { gate: String, qubit: QubitId },
    #[error("gate {gate} expects {expected} operands, got {actual}")]
    ArityMismatch {
        gate: String,
        expected: usize,
        actual: usize,
    },
    #[error("role map covers {actual} qubits but the circuit has {expected}")]
    RoleMapSize { expected: usize, actual: usize },
    #[error("{kind} has no OpenQASM 2.0 mapping; lower the circuit first")]
    UnloweredMacro { kind: String },

    #[error("fan-out needs at least one target")]
    EmptyTargets,
    #[error("operands overlap: qubit {0} appears in more than one role")]
    OverlappingPairs(QubitId),
    #[error("multi-controlled X operands overlap at qubit {0}")]
    OverlappingOperands(QubitId),
    #[error("{controls}-controlled X needs {needed} dirty ancillas, got {supplied}")]
    InsufficientAncillas {
        controls: usize,
        needed: usize,
        supplied: usize,
    },
    #[error("a multi-controlled X needs at least one control")]
    NoControls,
    #[error("address pattern has {pattern} bits but there are {controls} controls")]
    PatternLength { pattern: usize, controls: usize },
    #[error("input width {0} is too small (need at least 2)")]
    WidthTooSmall(usize),
    #[error("alpha must be one of 0.125, 0.0625, 0.03125, 0.015625 (exponent 3..=6), got exponent {0}")]
    InvalidAlpha(u32),
    /// The slope as given, kept as text so the error stays `Eq`.
    #[error("alpha must be one of 0.125, 0.0625, 0.03125, 0.015625, got {0}")]
    UnsupportedAlpha(String),

    #[error("qubit {0} is not placed on the grid")]
    UnplacedQubit(QubitId),
    #[error("grid cell ({row}, {col}) on the routing path holds no qubit")]
    VacantCell { row: usize, col: usize },
    #[error("grid coordinate ({row}, {col}) lies outside a {rows}x{cols} grid")]
    OffGrid {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("grid cell ({row}, {col}) is assigned to more than one qubit")]
    CellTaken { row: usize, col: usize },

    #[error("swap-qubit count l = {l} must satisfy 0 < l < n = {n}")]
    InvalidSwapCount { n: usize, l: usize },
    #[error("lookup tables are materialized only up to 16 bits, got {0}")]
    TableTooLarge(usize),
    #[error("unsupported float width {0}; expected 8, 16, 32, 64 or 128")]
    UnsupportedFormat(usize),
    #[error("cost for n = {n}, l = {l} does not fit in 128 bits")]
    CostOverflow { n: usize, l: usize },
    #[error("table has {actual} entries, expected {expected}")]
    TableShape { expected: usize, actual: usize },

    #[error("gate {0} is not a basis-state permutation")]
    NonPermutationGate(String),
    #[error("{qubits} qubits exceeds the simulator limit of {limit}")]
    TooManyQubits { qubits: usize, limit: usize },
    #[error("sparse state grew past {limit} nonzero amplitudes")]
    SupportTooLarge { limit: usize },
    #[error("basis state has width {actual}, circuit has {expected} qubits")]
    WidthMismatch { expected: usize, actual: usize },
}
