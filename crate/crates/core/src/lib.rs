//! Clifford+T circuits for neural-network activation functions.
//!
//! Constant T-depth ReLU and Leaky ReLU networks, a 2D-grid ReLU, and
//! SELECT/SWAP lookup-table circuits for smooth activations, together with
//! lowering to {H, S, T, CNOT}, T-depth metrics, simulators and QASM export.

pub mod circuit;
pub mod error;
pub mod grid;
pub mod leaky;
pub mod lower;
pub mod qasm;
pub mod qlut;
pub mod relu;
pub mod schedule;
pub mod sim;
pub mod synth;

pub use circuit::{validate_gates, Circuit, Gate, QubitId, Role};
pub use error::{Error, Result};
pub use lower::{lower, LoweredCircuit};
pub use qasm::{export_lowered_qasm, export_qasm};
pub use schedule::{metrics, schedule_layers, LayeredCircuit, Metrics};
