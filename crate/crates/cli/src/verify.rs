use anyhow::{bail, Result};
use qact::grid::validate_connectivity;
use qact::sim::{check_unitary_equiv, verify_functional, EquivMode, EQUIV_QUBIT_LIMIT};
use qact::synth::{build_cswap_batch, build_shared_control_toffoli_batch};
use qact::{lower, Circuit, Gate, QubitId};
use serde_json::{json, Value};

use crate::args::{Target, VerifyArgs, VerifyTarget};
use crate::build::{build, oracle_from_origin, read_circuit};

/// Widths above this are sampled unless `--exhaustive` is given.
const DEFAULT_EXHAUSTIVE_LIMIT: usize = 16;
const DEFAULT_SAMPLES: usize = 1000;

/// Returns the JSON report and whether everything passed.
pub fn run(args: &VerifyArgs) -> Result<(Value, bool)> {
    let (limit, samples) = match (args.exhaustive, args.samples) {
        (true, _) => (usize::MAX, 0),
        (false, Some(k)) => (0, k),
        (false, None) => (DEFAULT_EXHAUSTIVE_LIMIT, DEFAULT_SAMPLES),
    };
    if let Some(path) = &args.circuit {
        return circuit_file(read_circuit(path)?, limit, samples, args.seed);
    }
    let target = match args.target {
        Some(VerifyTarget::Gates) => return Ok(gates()),
        Some(VerifyTarget::Relu) => Target::Relu,
        Some(VerifyTarget::LeakyRelu) => Target::LeakyRelu,
        Some(VerifyTarget::Qlut) => Target::Qlut,
        None => bail!("give --target or --circuit"),
    };
    let built = build(target, &args.build)?;
    let report = verify_functional(&built.circuit, |x| built.oracle.apply(x), limit, samples, args.seed);
    let mut passed = report.passed;
    let mut out = json!({
        "target": built.name,
        "passed": report.passed,
        "functional": report,
    });
    if let Some(layout) = &built.layout {
        let lowered = lower(&built.circuit)?.to_circuit();
        let violations = validate_connectivity(&lowered, layout).len();
        passed &= violations == 0;
        out["connectivity_violations"] = json!(violations);
        out["passed"] = json!(passed);
    }
    Ok((out, passed))
}

/// A saved circuit is checked in two tiers: the macro circuit against the
/// reference named by its origin, and the gate lowerings it relies on. Small
/// circuits are also compared with their own lowering as unitaries.
fn circuit_file(c: Circuit, limit: usize, samples: usize, seed: u64) -> Result<(Value, bool)> {
    let mut out = json!({ "target": "circuit" });
    let mut passed = true;
    let mut checked = false;
    if let Some(origin) = &c.origin {
        let (oracle, layout) = oracle_from_origin(origin)?;
        let report = verify_functional(&c, |x| oracle.apply(x), limit, samples, seed);
        passed &= report.passed;
        out["functional"] = json!(report);
        if let Some(layout) = layout {
            let violations = validate_connectivity(&lower(&c)?.to_circuit(), &layout).len();
            passed &= violations == 0;
            out["connectivity_violations"] = json!(violations);
        }
        let (gates, ok) = gates();
        passed &= ok;
        out["gates"] = gates;
        checked = true;
    }
    if c.qubit_count <= EQUIV_QUBIT_LIMIT {
        let r = check_unitary_equiv(&c, &lower(&c)?.to_circuit(), EquivMode::Exact, EQUIV_QUBIT_LIMIT)?;
        passed &= r.equal;
        out["equivalence"] = json!(r);
        checked = true;
    }
    if !checked {
        bail!("circuit has no origin and more than {EQUIV_QUBIT_LIMIT} qubits; nothing to check it against");
    }
    out["passed"] = json!(passed);
    Ok((out, passed))
}

fn gates() -> (Value, bool) {
    let pairs = |m: usize| -> Vec<(QubitId, QubitId)> { (0..m).map(|i| (QubitId(1 + 2 * i), QubitId(2 + 2 * i))).collect() };
    let mut cases: Vec<(String, Circuit)> = vec![("toffoli".into(), Circuit::with_gates(3, vec![Gate::ccx(0, 1, 2)]))];
    for m in 1..=4 {
        let batch = build_shared_control_toffoli_batch(0, &pairs(m)).expect("valid batch");
        cases.push((format!("toffoli-batch-{m}"), Circuit::with_gates(2 * m + 1, batch.gates)));
        let batch = build_cswap_batch(0, &pairs(m)).expect("valid batch");
        cases.push((format!("cswap-batch-{m}"), Circuit::with_gates(2 * m + 1, batch.gates)));
    }
    for k in 3..=5 {
        let mcx = Gate::mcx((0..k).map(QubitId), k);
        cases.push((format!("mcx-{k}"), Circuit::with_gates(2 * k - 1, vec![mcx])));
    }

    let mut all = true;
    let results: Vec<Value> = cases
        .iter()
        .map(|(name, macro_circuit)| {
            let lowered = lower(macro_circuit).map(|l| (l.metrics(), l.to_circuit()));
            let (metrics, equal) = match lowered {
                Ok((m, l)) => {
                    let r = check_unitary_equiv(macro_circuit, &l, EquivMode::Exact, EQUIV_QUBIT_LIMIT);
                    (Some(m), r.map(|r| r.equal).unwrap_or(false))
                }
                Err(_) => (None, false),
            };
            all &= equal;
            json!({ "name": name, "qubits": macro_circuit.qubit_count, "equal": equal, "metrics": metrics })
        })
        .collect();
    (json!({ "target": "gates", "passed": all, "cases": results }), all)
}
