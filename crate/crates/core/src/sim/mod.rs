//! Verification by simulation.
//!
//! * [`simulate_macro`]: classical bit-level simulation of permutation gates.
//! * [`simulate_statevector`] / [`simulate_statevector_exact`]: dense
//!   statevectors, in floating point or in exact `Z[ω, 1/√2]` arithmetic.
//! * [`simulate_sparse`]: exact simulation over the nonzero amplitudes only.
//! * [`check_unitary_equiv`] and [`verify_functional`] build on these.

mod basis;
mod exact;
mod state;
mod verify;

pub use basis::{
    bits_msb_first, bits_to_string, parse_bits, value_msb_first, BasisState, ParseBitsError,
};
pub use exact::{ExactAmplitude, ZOmega};
pub use state::{
    apply_permutation, simulate_macro, simulate_sparse, simulate_statevector,
    simulate_statevector_exact, ExactState, SparseState, SPARSE_QUBIT_LIMIT, SPARSE_SUPPORT_LIMIT,
    STATEVECTOR_QUBIT_LIMIT,
};
pub use verify::{
    check_unitary_equiv, run_basis, verify_functional, Counterexample, EquivMode, EquivReport,
    FunctionalReport, EQUIV_QUBIT_LIMIT, FLOAT_TOLERANCE,
};
