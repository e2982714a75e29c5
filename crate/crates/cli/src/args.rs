use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qact::leaky::Encoding;
use qact::qlut::{ActivationFn, FloatFormat};

#[derive(Parser, Debug)]
#[command(name = "qact", version, about = "Clifford+T circuits for activation functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a circuit and write it as JSON or QASM.
    Synth(SynthArgs),
    /// Print the lowered circuit's metrics as JSON.
    Analyze(SourceArgs),
    /// Run one basis input through a circuit and print the output register.
    Simulate(SimulateArgs),
    /// Check a circuit against its classical reference; prints a JSON report.
    Verify(VerifyArgs),
    /// Emit the T-depth tables as CSV or JSON.
    CostTable(CostTableArgs),
    /// Convert a circuit to OpenQASM 2.0.
    Export(ExportArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Relu,
    LeakyRelu,
    Qlut,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Layout {
    #[default]
    Plain,
    Grid,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CircuitFormat {
    #[default]
    Json,
    Qasm,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TableFormat {
    #[default]
    Csv,
    Json,
}

/// Build options shared by every verb that can synthesize a circuit.
#[derive(Args, Debug, Clone)]
pub struct BuildArgs {
    /// Input width.
    #[arg(long)]
    pub bits: Option<usize>,
    /// `grid` places the ReLU on a 2D nearest-neighbour lattice.
    #[arg(long, value_enum, default_value_t)]
    pub layout: Layout,
    /// Leaky ReLU slope: 0.125, 0.0625, 0.03125 or 0.015625.
    #[arg(long, default_value_t = 0.125)]
    pub alpha: f64,
    /// Leaky ReLU number encoding: `true` (sign-magnitude) or `twos`.
    #[arg(long, default_value = "true")]
    pub encoding: Encoding,
    /// Activation function for lookup tables.
    #[arg(long = "fn", default_value = "sigmoid")]
    pub function: ActivationFn,
    /// Float format of the lookup table: f8, f16, f32, f64 or f128.
    #[arg(long)]
    pub format: Option<FloatFormat>,
    /// Input bits used as the SWAP address of the lookup table.
    #[arg(long)]
    pub swap_qubits: Option<usize>,
}

/// A circuit named by target and build options, or read from a JSON file.
#[derive(Args, Debug, Clone)]
pub struct SourceArgs {
    #[arg(value_enum, required_unless_present = "circuit", conflicts_with = "circuit")]
    pub target: Option<Target>,
    /// Circuit JSON written by `synth`.
    #[arg(long)]
    pub circuit: Option<PathBuf>,
    #[command(flatten)]
    pub build: BuildArgs,
}

#[derive(Args, Debug)]
pub struct SynthArgs {
    #[arg(value_enum)]
    pub target: Target,
    #[command(flatten)]
    pub build: BuildArgs,
    /// `qasm` writes the lowered Clifford+T circuit.
    #[arg(long, value_enum, default_value_t)]
    pub emit: CircuitFormat,
    /// Output file. Defaults to `$QACT_OUT_DIR/<name>`, else stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the grid placement as JSON.
    #[arg(long)]
    pub layout_out: Option<PathBuf>,
    /// Also write the lookup table as `input output` lines.
    #[arg(long)]
    pub table_out: Option<PathBuf>,
    /// Write table lines in hex instead of binary.
    #[arg(long)]
    pub hex: bool,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Input register bits, most significant first.
    #[arg(long)]
    pub input: String,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyTarget {
    Relu,
    LeakyRelu,
    Qlut,
    /// Lowering of the Toffoli, batches and multi-controlled X.
    Gates,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, required_unless_present = "circuit", conflicts_with = "circuit")]
    pub target: Option<VerifyTarget>,
    /// Circuit JSON; checked against its own macro-level semantics.
    #[arg(long)]
    pub circuit: Option<PathBuf>,
    #[command(flatten)]
    pub build: BuildArgs,
    /// Enumerate every input regardless of width.
    #[arg(long, conflicts_with = "samples")]
    pub exhaustive: bool,
    /// Random inputs to check instead of enumerating.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct CostTableArgs {
    /// Measured T-depths of the ReLU family instead of the lookup-table model.
    #[arg(long, conflicts_with = "qlut")]
    pub relu: bool,
    /// Lookup-table cost model (the default).
    #[arg(long)]
    pub qlut: bool,
    /// Function the lookup table would hold; the model does not depend on it.
    #[arg(long = "fn", default_value = "any")]
    pub function: String,
    /// Comma-separated formats, one table row group each.
    #[arg(long, value_delimiter = ',', default_value = "f8,f16,f32,f64,f128")]
    pub formats: Vec<FloatFormat>,
    #[arg(long, value_enum, default_value_t)]
    pub emit: TableFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Keep macro gates (ccx, cswap, swap) instead of lowering to Clifford+T.
    #[arg(long)]
    pub r#macro: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
