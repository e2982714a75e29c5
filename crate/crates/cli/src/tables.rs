use anyhow::{bail, Result};
use qact::grid::build_relu_grid;
use qact::leaky::{build_leaky_relu, Encoding, LeakySpec, ALPHA_EXPONENTS};
use qact::qlut::{cost_model, standard_swap_counts, ActivationFn, FloatFormat};
use qact::relu::build_relu;
use qact::{lower, Circuit};
use serde::Serialize;

use crate::args::{CostTableArgs, TableFormat};

#[derive(Serialize)]
struct QlutRow {
    n: usize,
    l: usize,
    ancilla: u128,
    t_depth: u128,
}

#[derive(Serialize)]
struct ReluRow {
    circuit: String,
    n: usize,
    qubits: usize,
    t_depth: usize,
    t_count: usize,
    depth: usize,
    size: usize,
}

fn measured(circuit: String, n: usize, c: &Circuit) -> Result<ReluRow> {
    let m = lower(c)?.metrics();
    Ok(ReluRow { circuit, n, qubits: c.qubit_count, t_depth: m.t_depth, t_count: m.t_count, depth: m.depth, size: m.size })
}

fn relu_rows() -> Result<Vec<ReluRow>> {
    let mut rows = Vec::new();
    for n in 2..=16 {
        rows.push(measured("relu".into(), n, &build_relu(n)?)?);
    }
    for n in [8, 32, 128] {
        rows.push(measured("relu-grid".into(), n, &build_relu_grid(n)?.0)?);
    }
    for n in 4..=12 {
        for e in ALPHA_EXPONENTS {
            for enc in [Encoding::TrueForm, Encoding::TwosComplement] {
                let spec = LeakySpec::new(n, e, enc)?;
                rows.push(measured(format!("leaky-relu-a{e}-{enc}"), n, &build_leaky_relu(&spec)?)?);
            }
        }
    }
    Ok(rows)
}

fn qlut_rows(formats: &[FloatFormat]) -> Result<Vec<QlutRow>> {
    let mut rows = Vec::new();
    for f in formats {
        let n = f.total();
        for l in standard_swap_counts(n) {
            let c = cost_model(n, l)?;
            rows.push(QlutRow { n, l, ancilla: c.ancilla, t_depth: c.t_depth });
        }
    }
    Ok(rows)
}

fn render<T: Serialize>(rows: &[T], header: &str, line: impl Fn(&T) -> String, format: TableFormat) -> Result<String> {
    Ok(match format {
        TableFormat::Json => serde_json::to_string_pretty(rows)? + "\n",
        TableFormat::Csv => {
            let mut out = format!("{header}\n");
            for r in rows {
                out += &line(r);
                out.push('\n');
            }
            out
        }
    })
}

pub fn run(args: &CostTableArgs) -> Result<String> {
    if args.function != "any" && args.function.parse::<ActivationFn>().is_err() {
        bail!("unknown function {:?}", args.function);
    }
    if args.relu {
        let rows = relu_rows()?;
        return render(
            &rows,
            "circuit,n,qubits,t_depth,t_count,depth,size",
            |r| format!("{},{},{},{},{},{},{}", r.circuit, r.n, r.qubits, r.t_depth, r.t_count, r.depth, r.size),
            args.emit,
        );
    }
    let rows = qlut_rows(&args.formats)?;
    render(&rows, "n,l,ancilla,t_depth", |r| format!("{},{},{},{}", r.n, r.l, r.ancilla, r.t_depth), args.emit)
}
