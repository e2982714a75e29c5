//! `qact`: synthesize, analyze, simulate, verify and export activation
//! circuits.
//!
//! Exit status is 0 on success, 1 when a verification fails and 2 for usage
//! or input errors.

mod args;
mod build;
mod tables;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use qact::sim::{bits_to_string, parse_bits, run_basis, BasisState};
use qact::{export_lowered_qasm, export_qasm, lower, Circuit};
use serde::Serialize;

use args::{Cli, CircuitFormat, Command, ExportArgs, SimulateArgs, SynthArgs};

/// Default directory for files written by `synth`.
const OUT_DIR_VAR: &str = "QACT_OUT_DIR";

fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Writes to `out`, else to `default` when given, else to stdout.
fn emit(text: &str, out: Option<&Path>, default: Option<PathBuf>) -> Result<()> {
    match out.map(Path::to_path_buf).or(default) {
        Some(path) => {
            write_text(&path, text)?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn qasm(c: &Circuit, lowered: bool) -> Result<String> {
    Ok(if lowered { export_lowered_qasm(&lower(c)?)? } else { export_qasm(c)? })
}

fn synth(args: &SynthArgs) -> Result<()> {
    let built = build::build(args.target, &args.build)?;
    let (text, ext) = match args.emit {
        CircuitFormat::Json => (built.circuit.to_json() + "\n", "json"),
        CircuitFormat::Qasm => (qasm(&built.circuit, true)?, "qasm"),
    };
    let default = std::env::var_os(OUT_DIR_VAR).map(|d| PathBuf::from(d).join(format!("{}.{ext}", built.name)));
    emit(&text, args.out.as_deref(), default)?;

    if let Some(path) = &args.layout_out {
        let Some(layout) = &built.layout else { bail!("--layout-out needs --layout grid") };
        write_text(path, &(serde_json::to_string_pretty(&layout.dump())? + "\n"))?;
    }
    if let Some(path) = &args.table_out {
        let Some(table) = &built.table else { bail!("--table-out is only available for qlut") };
        write_text(path, &table.dump(args.hex))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct Analysis {
    qubit_count: usize,
    #[serde(flatten)]
    metrics: qact::Metrics,
}

fn analyze(source: &args::SourceArgs) -> Result<()> {
    let c = build::load(source)?;
    let metrics = lower(&c)?.metrics();
    println!("{}", serde_json::to_string_pretty(&Analysis { qubit_count: c.qubit_count, metrics })?);
    Ok(())
}

fn simulate(args: &SimulateArgs) -> Result<()> {
    let input = parse_bits(&args.input).map_err(|e| anyhow::anyhow!("--input: {e}"))?;
    let mut source = args.source.clone();
    if source.build.bits.is_none() && source.build.format.is_none() {
        source.build.bits = Some(input.len());
    }
    let c = build::load(&source)?;
    let register = c.input_register();
    if register.len() != input.len() {
        bail!("--input has {} bits but the input register has {}", input.len(), register.len());
    }
    let mut state = BasisState::zeros(c.qubit_count);
    state.write(&register, &input);
    let out = run_basis(&c, &state).map_err(|e| anyhow::anyhow!(e))?;
    let outputs = c.output_register();
    if outputs.is_empty() {
        println!("{out}");
    } else {
        println!("{}", bits_to_string(&out.read(&outputs)));
    }
    Ok(())
}

fn export(args: &ExportArgs) -> Result<()> {
    let c = build::load(&args.source)?;
    emit(&qasm(&c, !args.r#macro)?, args.out.as_deref(), None)
}

/// `Ok(false)` means a verification ran and failed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Synth(a) => synth(&a)?,
        Command::Analyze(a) => analyze(&a)?,
        Command::Simulate(a) => simulate(&a)?,
        Command::Verify(a) => {
            let (report, passed) = verify::run(&a)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            return Ok(passed);
        }
        Command::CostTable(a) => {
            let text = tables::run(&a)?;
            emit(&text, a.out.as_deref(), None)?;
        }
        Command::Export(a) => export(&a)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
