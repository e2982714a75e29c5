//! OpenQASM 2.0 export over a single register `q`.

use std::fmt::Write;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::lower::LoweredCircuit;

fn gate_line(g: &Gate) -> Result<String> {
    let q = |id: &crate::circuit::QubitId| format!("q[{}]", id.0);
    let line = match g {
        Gate::H(a) => format!("h {};", q(a)),
        Gate::S(a) => format!("s {};", q(a)),
        Gate::Sdg(a) => format!("sdg {};", q(a)),
        Gate::T(a) => format!("t {};", q(a)),
        Gate::Tdg(a) => format!("tdg {};", q(a)),
        Gate::X(a) => format!("x {};", q(a)),
        Gate::Cnot { control, target } => format!("cx {},{};", q(control), q(target)),
        Gate::Swap(a, b) => format!("swap {},{};", q(a), q(b)),
        Gate::Toffoli { controls, target } => {
            format!("ccx {},{},{};", q(&controls[0]), q(&controls[1]), q(target))
        }
        Gate::Cswap { control, a, b } => format!("cswap {},{},{};", q(control), q(a), q(b)),
        Gate::Mcx { .. } | Gate::PhasePower { .. } => {
            return Err(Error::UnloweredMacro {
                kind: g.name().to_string(),
            })
        }
    };
    Ok(line)
}

/// Renders `circuit` as OpenQASM 2.0. Multi-controlled X and phase powers
/// have no standard-library mapping and must be lowered first.
pub fn export_qasm(circuit: &Circuit) -> Result<String> {
    circuit.validate()?;
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    if circuit.qubit_count > 0 {
        writeln!(out, "qreg q[{}];", circuit.qubit_count).unwrap();
    }
    for g in &circuit.gates {
        out.push_str(&gate_line(g)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn export_lowered_qasm(lowered: &LoweredCircuit) -> Result<String> {
    export_qasm(&lowered.to_circuit())
}
