//! Lookup-table circuits for smooth activation functions.

mod cost;
mod float;
mod network;
mod table;

pub use cost::{cost_model, max_error, mcx_t_depth, standard_swap_counts, MaxError, QlutCost, ERROR_DOMAIN};
pub use float::{decode_float, encode_float, FloatFormat};
pub use network::{
    build_qlut, build_qlut_from_table, build_select, build_swap_network, QlutConfig, QlutRegisters,
};
pub use table::{build_table, ActivationFn, LookupTable, MAX_TABLE_BITS};
