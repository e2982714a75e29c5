//! SELECT, SWAP and SELECTSWAP circuits.
//!
//! Qubit layout for an `n`-bit input, `l` swap qubits and `w`-bit outputs:
//!
//! ```text
//! 0 .. n−l        SELECT address (high input bits, MSB first)
//! n−l .. n        swap address (low input bits)
//! n + r·w + b     bit b (MSB first) of register r, r < 2^l
//! ```
//!
//! Register 0 is the output; the other registers are garbage.

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::float::FloatFormat;
use super::table::{build_table, ActivationFn, LookupTable};
use crate::circuit::{Circuit, Gate, QubitId, Role};
use crate::error::{Error, Result};
use crate::sim::bits_msb_first;
use crate::synth::controlled_fanout_gates;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QlutConfig {
    pub n: usize,
    pub l: usize,
    pub function: ActivationFn,
}

impl QlutConfig {
    pub fn new(n: usize, l: usize, function: ActivationFn) -> Result<Self> {
        let c = QlutConfig { n, l, function };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        FloatFormat::from_width(self.n)?;
        if self.l == 0 || self.l >= self.n {
            return Err(Error::InvalidSwapCount { n: self.n, l: self.l });
        }
        Ok(())
    }

    pub fn format(&self) -> Result<FloatFormat> {
        FloatFormat::from_width(self.n)
    }
}

/// Register allocation shared by the SELECT and SWAP builders.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QlutRegisters {
    pub n: usize,
    pub l: usize,
    pub width: usize,
}

impl QlutRegisters {
    pub fn new(n: usize, l: usize, width: usize) -> Result<Self> {
        if l == 0 || l >= n {
            return Err(Error::InvalidSwapCount { n, l });
        }
        Ok(QlutRegisters { n, l, width })
    }

    pub fn register_count(&self) -> usize {
        1 << self.l
    }

    pub fn qubit_count(&self) -> usize {
        self.n + self.width * self.register_count()
    }

    pub fn select_address(&self) -> Vec<QubitId> {
        (0..self.n - self.l).map(QubitId).collect()
    }

    pub fn swap_address(&self) -> Vec<QubitId> {
        (self.n - self.l..self.n).map(QubitId).collect()
    }

    pub fn inputs(&self) -> Vec<QubitId> {
        (0..self.n).map(QubitId).collect()
    }

    pub fn register(&self, r: usize) -> Vec<QubitId> {
        let base = self.n + r * self.width;
        (base..base + self.width).map(QubitId).collect()
    }

    fn all_registers(&self) -> Vec<QubitId> {
        (self.n..self.qubit_count()).map(QubitId).collect()
    }

    fn empty_circuit(&self) -> Circuit {
        let mut c = Circuit::new(self.qubit_count());
        c.set_roles(self.select_address(), Role::Input);
        c.set_roles(self.swap_address(), Role::SwapAddress);
        c.set_roles(self.all_registers(), Role::Garbage);
        c.set_roles(self.register(0), Role::Output);
        c
    }
}

/// SELECT: for each high address `j`, a controlled fan-out on the SELECT
/// address with pattern `j` writes `table[(j << l) | r]` into register `r`
/// for every `r`. Steps whose outputs are all zero write nothing and are
/// omitted.
///
/// The multi-controlled X of every step targets the first qubit of
/// register 0 and borrows the next register qubits as dirty ancillas.
pub fn build_select(table: &LookupTable, l: usize) -> Result<Circuit> {
    let regs = QlutRegisters::new(table.input_width, l, table.output_width)?;
    let controls = regs.select_address();
    let k = controls.len();
    let pool = regs.all_registers();
    let pivot = pool[0];
    let ancillas = &pool[1..];
    if ancillas.len() < k.saturating_sub(2) {
        return Err(Error::InsufficientAncillas {
            controls: k,
            needed: k - 2,
            supplied: ancillas.len(),
        });
    }

    let mut c = regs.empty_circuit();
    for j in 0..1usize << k {
        let targets: Vec<QubitId> = (0..regs.register_count())
            .flat_map(|r| {
                let out = bits_msb_first(table.get(((j << l) | r) as u64) as u128, regs.width);
                regs.register(r)
                    .into_iter()
                    .zip(out)
                    .filter_map(|(q, bit)| bit.then_some(q))
            })
            .collect();
        if targets.is_empty() {
            continue;
        }
        let pattern = bits_msb_first(j as u128, k);
        c.extend(controlled_fanout_gates(&controls, &pattern, pivot, &targets, ancillas));
    }
    Ok(c)
}

/// SWAP network: stage `b` (swap-address bit `b`, least significant first)
/// is one controlled-SWAP batch exchanging register `r` with `r + 2^b` for
/// every `r` divisible by `2^(b+1)`. Afterwards register 0 holds the register
/// indexed by the swap address.
pub fn build_swap_network(n: usize, l: usize, width: usize) -> Result<Circuit> {
    let regs = QlutRegisters::new(n, l, width)?;
    let mut c = regs.empty_circuit();
    for b in 0..l {
        let control = QubitId(n - 1 - b);
        let step = 1usize << b;
        for r in (0..regs.register_count()).step_by(2 * step) {
            for (x, y) in regs.register(r).into_iter().zip(regs.register(r + step)) {
                c.push(Gate::cswap(control, x, y));
            }
        }
    }
    Ok(c)
}

/// SELECT followed by SWAP for an arbitrary table.
pub fn build_qlut_from_table(table: &LookupTable, l: usize) -> Result<Circuit> {
    let mut c = build_select(table, l)?;
    let swap = build_swap_network(table.input_width, l, table.output_width)?;
    c.append(&swap);
    Ok(c)
}

/// `|x⟩|0⟩|0⟩ → |x⟩|f(x)⟩|garbage⟩` for the float format of width `n`.
pub fn build_qlut(config: &QlutConfig) -> Result<Circuit> {
    config.validate()?;
    let fmt = config.format()?;
    let table = build_table(config.function, fmt)?;
    let mut c = build_qlut_from_table(&table, config.l)?;
    c.origin = Some(json!({
        "kind": "qlut",
        "function": config.function,
        "format": fmt.name(),
        "swap_qubits": config.l,
    }));
    Ok(c)
}
