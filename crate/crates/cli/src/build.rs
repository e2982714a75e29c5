use std::path::Path;

use anyhow::{bail, Context, Result};
use qact::grid::{build_relu_grid, layout_relu_grid, GridLayout};
use qact::leaky::{build_leaky_relu, leaky_reference, Encoding, LeakySpec};
use qact::qlut::{build_qlut, build_table, ActivationFn, FloatFormat, LookupTable, QlutConfig};
use qact::relu::{build_relu, relu_reference, FixedPointValue};
use qact::sim::{bits_msb_first, value_msb_first};
use qact::Circuit;
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::args::{BuildArgs, Layout, SourceArgs, Target};

/// Classical reference for a synthesized circuit.
pub enum Oracle {
    Relu,
    Leaky(LeakySpec),
    Table(LookupTable),
}

impl Oracle {
    pub fn apply(&self, x: &[bool]) -> Vec<bool> {
        match self {
            Oracle::Relu => relu_reference(&FixedPointValue::new(x.to_vec()).expect("register width ≥ 2")),
            Oracle::Leaky(spec) => leaky_reference(x, spec),
            Oracle::Table(t) => bits_msb_first(t.get(value_msb_first(x) as u64) as u128, t.output_width),
        }
    }
}

pub struct Built {
    pub circuit: Circuit,
    /// File stem for the default output name.
    pub name: String,
    pub layout: Option<GridLayout>,
    pub table: Option<LookupTable>,
    pub oracle: Oracle,
}

fn bits(args: &BuildArgs) -> Result<usize> {
    args.bits.context("--bits is required for this target")
}

fn qlut_format(args: &BuildArgs) -> Result<FloatFormat> {
    match (args.format, args.bits) {
        (Some(f), Some(n)) if f.total() != n => bail!("--bits {n} does not match --format {f}"),
        (Some(f), _) => Ok(f),
        (None, Some(n)) => Ok(FloatFormat::from_width(n)?),
        (None, None) => bail!("qlut needs --format or --bits"),
    }
}

pub fn build(target: Target, args: &BuildArgs) -> Result<Built> {
    if args.layout == Layout::Grid && target != Target::Relu {
        bail!("--layout grid is only available for relu");
    }
    Ok(match target {
        Target::Relu => {
            let n = bits(args)?;
            if args.layout == Layout::Grid {
                let (circuit, layout) = build_relu_grid(n)?;
                Built { circuit, name: format!("relu-grid-{n}"), layout: Some(layout), table: None, oracle: Oracle::Relu }
            } else {
                Built { circuit: build_relu(n)?, name: format!("relu-{n}"), layout: None, table: None, oracle: Oracle::Relu }
            }
        }
        Target::LeakyRelu => {
            let n = bits(args)?;
            let spec = LeakySpec::with_alpha(n, args.alpha, args.encoding)?;
            Built {
                circuit: build_leaky_relu(&spec)?,
                name: format!("leaky-relu-{n}-a{}-{}", spec.alpha_exponent, spec.encoding),
                layout: None,
                table: None,
                oracle: Oracle::Leaky(spec),
            }
        }
        Target::Qlut => {
            let format = qlut_format(args)?;
            let l = args.swap_qubits.context("qlut needs --swap-qubits")?;
            let config = QlutConfig::new(format.total(), l, args.function)?;
            let table = build_table(args.function, format)?;
            Built {
                circuit: build_qlut(&config)?,
                name: format!("qlut-{}-{format}-l{l}", args.function),
                layout: None,
                oracle: Oracle::Table(table.clone()),
                table: Some(table),
            }
        }
    })
}

fn field<T: DeserializeOwned>(origin: &Value, key: &str) -> Result<T> {
    let v = origin.get(key).with_context(|| format!("origin lacks {key:?}"))?;
    serde_json::from_value(v.clone()).with_context(|| format!("origin field {key:?}"))
}

/// Rebuilds the reference (and grid layout) a saved circuit was made for.
pub fn oracle_from_origin(origin: &Value) -> Result<(Oracle, Option<GridLayout>)> {
    let kind: String = field(origin, "kind")?;
    Ok(match kind.as_str() {
        "relu" => {
            let bits: usize = field(origin, "bits")?;
            let grid = origin.get("layout").and_then(Value::as_str) == Some("grid");
            (Oracle::Relu, if grid { Some(layout_relu_grid(bits)?) } else { None })
        }
        "leaky_relu" => {
            let encoding: Encoding = field(origin, "encoding")?;
            let spec = LeakySpec::new(field(origin, "bits")?, field(origin, "alpha_exponent")?, encoding)?;
            (Oracle::Leaky(spec), None)
        }
        "qlut" => {
            let function: ActivationFn = field(origin, "function")?;
            let format: String = field(origin, "format")?;
            (Oracle::Table(build_table(function, format.parse()?)?), None)
        }
        other => bail!("unknown circuit origin {other:?}"),
    })
}

pub fn read_circuit(path: &Path) -> Result<Circuit> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let c = Circuit::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    c.validate().with_context(|| format!("invalid circuit in {}", path.display()))?;
    Ok(c)
}

/// The circuit a source names, built or read.
pub fn load(source: &SourceArgs) -> Result<Circuit> {
    match (&source.circuit, source.target) {
        (Some(path), _) => read_circuit(path),
        (None, Some(t)) => Ok(build(t, &source.build)?.circuit),
        (None, None) => bail!("give a target or --circuit"),
    }
}
