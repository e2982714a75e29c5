//! The cost table as printed, and its comparison with the closed form.

use super::round_sig;
use qact::qlut::{cost_model, standard_swap_counts};

/// T-depth and ancilla rows as printed, one row per `n`, columns in the
/// order of `standard_swap_counts(n)`.
pub const PRINTED: [(usize, [&str; 7], [&str; 7]); 5] = [
    (
        8,
        ["10244", "4104", "1548", "528", "148", "40", "28"],
        ["16", "32", "64", "128", "256", "512", "1024"],
    ),
    (
        16,
        ["3.15e6", "6.55e5", "1.31e5", "24608", "4136", "560", "72"],
        ["64", "256", "1024", "4096", "16384", "65536", "2.62e5"],
    ),
    (
        32,
        ["1.12e11", "5.91e9", "3.2e8", "1.47e7", "6.55e5", "24672", "624"],
        ["512", "8192", "1.31e5", "2.1e6", "3.36e7", "5.37e8", "8.59e9"],
    ),
    (
        64,
        ["6.23e19", "2.07e17", "6.69e14", "2.06e12", "5.91e9", "1.47e7", "24800"],
        ["16384", "4.19e6", "1.07e9", "2.75e11", "7.04e13", "1.81e16", "4.61e18"],
    ),
    (
        128,
        ["9.14e36", "1.19e32", "1.51e27", "1.83e22", "2.07e17", "2.06e12", "1.47e7"],
        ["8.39e6", "5.5e11", "3.6e16", "2.36e21", "1.55e26", "1.01e31", "6.65e35"],
    ),
];

/// Integers must match exactly; scientific entries must equal the model
/// rounded to three significant figures.
pub fn cell_matches(printed: &str, model: u128) -> bool {
    if let Ok(v) = printed.parse::<u128>() {
        return v == model;
    }
    let p: f64 = printed.parse().expect("printed cell");
    let m = round_sig(model as f64, 3);
    (m - p).abs() <= 1e-9 * p
}

#[derive(Debug, PartialEq)]
pub struct Mismatch {
    pub n: usize,
    pub l: usize,
    pub column: &'static str,
    pub printed: &'static str,
    pub model: u128,
}

pub fn table_mismatches() -> Vec<Mismatch> {
    let mut out = Vec::new();
    for (n, depths, ancillas) in PRINTED {
        for (i, l) in standard_swap_counts(n).into_iter().enumerate() {
            let cost = cost_model(n, l).expect("standard column");
            for (column, printed, model) in [("T-depth", depths[i], cost.t_depth), ("ancilla", ancillas[i], cost.ancilla)] {
                if !cell_matches(printed, model) {
                    out.push(Mismatch { n, l, column, printed, model });
                }
            }
        }
    }
    out
}
