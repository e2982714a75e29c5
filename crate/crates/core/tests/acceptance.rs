//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines are printed even when output capture is on.
//!
//! The process fails on any unexpected result. Criterion 2 is expected to
//! report FAIL on a single cell: the printed (32, 12) T-depth, 3.2e8, is not
//! what the closed form gives (301,989,936 ≈ 3.02e8, whose neighbours in the
//! same column and row agree with the formula). Any other mismatch fails the
//! run.

mod common;

use common::qasm::{assert_same_unitary, parse};
use common::table::{table_mismatches, Mismatch};
use common::{
    bit, flip, implements_permutation, leaky_oracle, linear_fit,
    sigmoid_oracle, signed_value, swap_bits,
};
use qact::grid::build_relu_grid;
use qact::leaky::{build_leaky_relu, Encoding, LeakySpec, ALPHA_EXPONENTS};
use qact::qlut::{
    build_qlut, cost_model, max_error, ActivationFn, FloatFormat, QlutConfig,
};
use qact::relu::build_relu;
use qact::sim::{bits_msb_first, simulate_macro, verify_functional, BasisState};
use qact::synth::{
    build_cswap_batch, build_fanout, build_multi_controlled_x, build_shared_control_toffoli_batch,
    FanoutSpec,
};
use qact::{export_lowered_qasm, export_qasm, lower, Circuit, Gate, QubitId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::time::{Duration, Instant};

type Check = Result<String, String>;

const KNOWN_MISPRINT: (usize, usize) = (32, 12);

// ---------------------------------------------------------------------------
// 1

fn lowered_t_depths() -> Check {
    for n in 2..=16 {
        let d = lower(&build_relu(n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?.metrics().t_depth;
        if d != 4 {
            return Err(format!("ReLU n = {n}: T-depth {d}"));
        }
    }
    for n in [8, 32, 128] {
        let (c, _) = build_relu_grid(n).map_err(|e| e.to_string())?;
        let d = lower(&c).map_err(|e| e.to_string())?.metrics().t_depth;
        if d != 4 {
            return Err(format!("grid ReLU n = {n}: T-depth {d}"));
        }
    }
    let mut count = 0;
    for n in 4..=12 {
        for e in ALPHA_EXPONENTS {
            for enc in [Encoding::TrueForm, Encoding::TwosComplement] {
                let spec = LeakySpec::new(n, e, enc).map_err(|e| e.to_string())?;
                let c = build_leaky_relu(&spec).map_err(|e| e.to_string())?;
                let d = lower(&c).map_err(|e| e.to_string())?.metrics().t_depth;
                if d != 8 {
                    return Err(format!("leaky {spec:?}: T-depth {d}"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("ReLU n=2..16 -> 4, grid n=8,32,128 -> 4, {count} leaky variants -> 8"))
}

// ---------------------------------------------------------------------------
// 2

fn describe(bad: &[Mismatch]) -> String {
    bad.iter()
        .map(|m| format!("({}, {}) {} printed {} but model gives {} = {:.3e}", m.n, m.l, m.column, m.printed, m.model, m.model as f64))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Only the 35 T-depth cells are graded. The ancilla row labels the columns;
/// disagreements there are reported but do not decide the outcome.
fn cost_table() -> Check {
    let (depth, ancilla): (Vec<Mismatch>, Vec<Mismatch>) =
        table_mismatches().into_iter().partition(|m| m.column == "T-depth");
    let note = if ancilla.is_empty() {
        "all 35 ancilla cells agree".to_string()
    } else {
        format!("ancilla note: {}", describe(&ancilla))
    };
    if depth.is_empty() {
        Ok(format!("35 T-depth cells match; {note}"))
    } else {
        Err(format!("{} of 35 T-depth cells differ: {}; {note}", depth.len(), describe(&depth)))
    }
}

/// True when the only graded disagreement is the known misprint.
fn cost_table_failure_is_the_known_misprint() -> bool {
    let bad: Vec<Mismatch> = table_mismatches().into_iter().filter(|m| m.column == "T-depth").collect();
    bad.len() == 1 && (bad[0].n, bad[0].l) == KNOWN_MISPRINT
}

// ---------------------------------------------------------------------------
// 3

fn qlut_t_depths() -> Check {
    let mut sigmoid = Vec::new();
    for l in 1..=7 {
        let model = cost_model(8, l).map_err(|e| e.to_string())?.t_depth;
        let measure = |f| -> Result<u128, String> {
            let c = build_qlut(&QlutConfig::new(8, l, f).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            Ok(lower(&c).map_err(|e| e.to_string())?.metrics().t_depth as u128)
        };
        let tanh = measure(ActivationFn::Tanh)?;
        if tanh != model {
            return Err(format!("tanh l = {l}: measured {tanh}, model {model}"));
        }
        // Empty address blocks are skipped, so a table with zero outputs
        // can only come in under the model.
        let s = measure(ActivationFn::Sigmoid)?;
        if s > model {
            return Err(format!("sigmoid l = {l}: measured {s} exceeds model {model}"));
        }
        sigmoid.push(s.to_string());
    }
    Ok(format!("tanh equals the model for l=1..7; sigmoid {} within it", sigmoid.join("/")))
}

// ---------------------------------------------------------------------------
// 4

fn exhaustive(name: &str, c: &Circuit, oracle: impl Fn(&[bool]) -> Vec<bool> + Sync, width: usize) -> Result<u64, String> {
    let report = verify_functional(c, oracle, width, 0, 0);
    if !report.passed || !report.exhaustive {
        return Err(format!("{name}: {:?}", report.counterexample));
    }
    Ok(report.inputs_checked)
}

fn functional() -> Check {
    let mut inputs = 0;
    let err = |e: qact::Error| e.to_string();
    for n in 2..=10 {
        let relu = |x: &[bool]| bits_msb_first(signed_value(x, Encoding::TrueForm).max(0.0) as u128, x.len() - 1);
        inputs += exhaustive(&format!("ReLU n = {n}"), &build_relu(n).map_err(err)?, relu, 10)?;
        for e in ALPHA_EXPONENTS {
            for enc in [Encoding::TrueForm, Encoding::TwosComplement] {
                let spec = LeakySpec::new(n, e, enc).map_err(err)?;
                let c = build_leaky_relu(&spec).map_err(err)?;
                inputs += exhaustive(&format!("{spec:?}"), &c, |x| leaky_oracle(x, &spec), 10)?;
            }
        }
    }
    let (grid, _) = build_relu_grid(8).map_err(err)?;
    inputs += exhaustive("grid ReLU n = 8", &grid, |x| if x[0] { vec![false; 7] } else { x[1..].to_vec() }, 10)?;
    for l in [1, 3, 5, 7] {
        let c = build_qlut(&QlutConfig::new(8, l, ActivationFn::Sigmoid).map_err(err)?).map_err(err)?;
        inputs += exhaustive(&format!("sigmoid l = {l}"), &c, sigmoid_oracle, 10)?;
    }
    Ok(format!("{inputs} basis inputs, no counterexample"))
}

// ---------------------------------------------------------------------------
// 5

fn lowering_equivalence() -> Check {
    let lowered = |c: &Circuit, width: usize| -> Result<Circuit, String> {
        let c = Circuit::with_gates(width, c.gates.clone());
        Ok(lower(&c).map_err(|e| e.to_string())?.to_circuit())
    };
    let pairs = |m: usize| -> Vec<(QubitId, QubitId)> { (0..m).map(|i| (QubitId(1 + 2 * i), QubitId(2 + 2 * i))).collect() };
    let mut checked = 0;

    let toffoli = lowered(&Circuit::with_gates(3, vec![Gate::ccx(0, 1, 2)]), 3)?;
    implements_permutation(&toffoli, |x| if bit(x, 0) && bit(x, 1) { flip(x, 2) } else { x })
        .map_err(|e| format!("Toffoli: {e}"))?;
    checked += 1;

    for m in 1..=4 {
        let c = build_shared_control_toffoli_batch(0, &pairs(m)).map_err(|e| e.to_string())?;
        implements_permutation(&lowered(&c, 2 * m + 1)?, |x| {
            (0..m).fold(x, |y, i| if bit(x, 0) && bit(x, 1 + 2 * i) { flip(y, 2 + 2 * i) } else { y })
        })
        .map_err(|e| format!("Toffoli batch m = {m}: {e}"))?;
        let c = build_cswap_batch(0, &pairs(m)).map_err(|e| e.to_string())?;
        implements_permutation(&lowered(&c, 2 * m + 1)?, |x| {
            if bit(x, 0) {
                (0..m).fold(x, |y, i| swap_bits(y, 1 + 2 * i, 2 + 2 * i))
            } else {
                x
            }
        })
        .map_err(|e| format!("CSWAP batch m = {m}: {e}"))?;
        checked += 2;
    }

    for k in 3..=5 {
        let controls: Vec<QubitId> = (0..k).map(QubitId).collect();
        let ancillas: Vec<QubitId> = (k + 1..2 * k - 1).map(QubitId).collect();
        let c = build_multi_controlled_x(&controls, k, &ancillas).map_err(|e| e.to_string())?;
        implements_permutation(&lowered(&c, 2 * k - 1)?, |x| if (0..k).all(|q| bit(x, q)) { flip(x, k) } else { x })
            .map_err(|e| format!("MCX k = {k}: {e}"))?;
        checked += 1;
    }
    Ok(format!("{checked} circuits exactly equal to their references up to global phase"))
}

// ---------------------------------------------------------------------------
// 6

fn growth_fits() -> Check {
    let err = |e: qact::Error| e.to_string();
    let ns = [8usize, 32, 128, 512];
    let mut grid = Vec::new();
    for &n in &ns {
        grid.push(lower(&build_relu_grid(n).map_err(err)?.0).map_err(err)?.metrics());
    }
    let lx: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let ly: Vec<f64> = grid.iter().map(|m| (m.depth as f64).ln()).collect();
    let (_, exponent, _) = linear_fit(&lx, &ly);
    if !(0.35..=0.65).contains(&exponent) {
        return Err(format!("grid depth exponent {exponent:.3} outside 0.5 ± 0.15"));
    }
    let nf: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let (_, _, grid_r2) = linear_fit(&nf, &grid.iter().map(|m| m.size as f64).collect::<Vec<_>>());

    let ns: Vec<usize> = (4..=64).collect();
    let mut relu = Vec::new();
    for &n in &ns {
        relu.push(lower(&build_relu(n).map_err(err)?).map_err(err)?.metrics());
    }
    let log_n: Vec<f64> = ns.iter().map(|&n| (n as f64).log2()).collect();
    let depth: Vec<f64> = relu.iter().map(|m| m.depth as f64).collect();
    let (a, b, _) = linear_fit(&log_n, &depth);
    let residual = log_n
        .iter()
        .zip(&depth)
        .map(|(x, y)| (y - a - b * x).abs() / y)
        .fold(0.0, f64::max);
    if residual >= 0.1 {
        return Err(format!("ReLU depth vs log2 n: worst relative residual {residual:.3}"));
    }
    let nf: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let (_, _, relu_r2) = linear_fit(&nf, &relu.iter().map(|m| m.size as f64).collect::<Vec<_>>());
    if grid_r2 <= 0.99 || relu_r2 <= 0.99 {
        return Err(format!("size R² grid {grid_r2:.4}, ReLU {relu_r2:.4}"));
    }
    Ok(format!(
        "grid exponent {exponent:.3}; ReLU depth {a:.1} + {b:.2}·log2 n, worst residual {:.1}%; size R² grid {grid_r2:.4}, ReLU {relu_r2:.4}",
        100.0 * residual
    ))
}

// ---------------------------------------------------------------------------
// 7

fn sigmoid_error() -> Check {
    let e8 = max_error(ActivationFn::Sigmoid, FloatFormat::F8, 1_000_000, 1).map_err(|e| e.to_string())?;
    let e16 = max_error(ActivationFn::Sigmoid, FloatFormat::F16, 1_000_000, 1).map_err(|e| e.to_string())?;
    if e8.value > 0.5 || e16.value > 2f64.powi(-7) || e8.points < 1_000_000 || e16.points < 1_000_000 {
        return Err(format!("f8 {e8:?}, f16 {e16:?}"));
    }
    Ok(format!(
        "f8 {:.4e} <= 0.5 ({} points), f16 {:.4e} <= 2^-7 ({} points)",
        e8.value, e8.points, e16.value, e16.points
    ))
}

// ---------------------------------------------------------------------------
// 8

fn random_gate(rng: &mut ChaCha8Rng, n: usize, permutation_only: bool) -> Gate {
    let mut q: Vec<usize> = (0..n).collect();
    q.shuffle(rng);
    let kinds = if permutation_only { 5 } else { 8 };
    match rng.gen_range(0..kinds) {
        0 => Gate::x(q[0]),
        1 => Gate::cx(q[0], q[1]),
        2 => Gate::swap(q[0], q[1]),
        3 => Gate::ccx(q[0], q[1], q[2]),
        4 => Gate::cswap(q[0], q[1], q[2]),
        5 => Gate::h(q[0]),
        6 => Gate::t(q[0]),
        _ => Gate::sdg(q[0]),
    }
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> BasisState {
    BasisState::from_bits((0..n).map(|_| rng.gen::<bool>()))
}

fn properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    for _ in 0..200 {
        let targets: Vec<QubitId> = (1..12).filter(|_| rng.gen()).map(QubitId).collect();
        if targets.is_empty() {
            continue;
        }
        let mut c = build_fanout(&FanoutSpec::new(0, targets)).map_err(|e| e.to_string())?;
        c.qubit_count = 12;
        let s = random_state(&mut rng, 12);
        let twice = simulate_macro(&c, &simulate_macro(&c, &s).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        if twice != s {
            return Err(format!("fan-out not self-inverse on {c:?}"));
        }
    }

    for _ in 0..200 {
        let k = rng.gen_range(3..=6);
        let mut q: Vec<usize> = (0..12).collect();
        q.shuffle(&mut rng);
        let q: Vec<QubitId> = q.into_iter().map(QubitId).collect();
        let mut c = build_multi_controlled_x(&q[..k], q[k], &q[k + 1..]).map_err(|e| e.to_string())?;
        c.qubit_count = 12;
        let s = random_state(&mut rng, 12);
        let mut expected = s.clone();
        if q[..k].iter().all(|&c| s.get(c)) {
            expected.flip(q[k]);
        }
        if simulate_macro(&c, &s).map_err(|e| e.to_string())? != expected {
            return Err(format!("dirty ancillas not restored, k = {k}"));
        }
    }

    for _ in 0..50 {
        let gates = (0..20).map(|_| random_gate(&mut rng, 7, true)).collect();
        let c = Circuit::with_gates(7, gates);
        let mut seen = HashSet::new();
        for i in 0..1u128 << 7 {
            let out = simulate_macro(&c, &BasisState::from_index(i, 7)).map_err(|e| e.to_string())?;
            if !seen.insert(out.index()) {
                return Err("permutation circuit is not a bijection".into());
            }
        }
    }

    for f in [FloatFormat::F8, FloatFormat::F16] {
        for p in 0..f.pattern_count().unwrap_or(0) as u128 {
            let x = f.decode(p);
            if !x.is_nan() && f.encode(x) != p {
                return Err(format!("{} round trip lost {p:#x}", f.name()));
            }
        }
    }
    for _ in 0..100_000 {
        let bits: u64 = rng.gen();
        let x = f64::from_bits(bits);
        if x.is_nan() {
            continue;
        }
        let x32 = x as f32 as f64;
        if FloatFormat::F32.decode(FloatFormat::F32.encode(x32)).to_bits() != x32.to_bits()
            || FloatFormat::F64.encode(x) != bits as u128
            || FloatFormat::F128.decode(FloatFormat::F128.encode(x)).to_bits() != bits
        {
            return Err(format!("wide codec round trip lost {x:e}"));
        }
    }

    for _ in 0..30 {
        let gates = (0..12).map(|_| random_gate(&mut rng, 5, false)).collect();
        let c = Circuit::with_gates(5, gates);
        let l = lower(&c).map_err(|e| e.to_string())?;
        let text = export_lowered_qasm(&l).map_err(|e| e.to_string())?;
        assert_same_unitary(&c, &parse(&text, false));
        assert_same_unitary(&c, &parse(&export_qasm(&c).map_err(|e| e.to_string())?, true));
    }

    Ok("fan-out self-inverse, dirty-ancilla restoration, bijectivity, codec round trip, QASM parse validity (seed 2024)".into())
}

// ---------------------------------------------------------------------------

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "lowered T-depths", budget: Duration::from_secs(5), run: lowered_t_depths },
        Criterion { id: 2, name: "cost model vs printed table", budget: Duration::from_secs(1), run: cost_table },
        Criterion { id: 3, name: "QLUT T-depth vs model", budget: Duration::from_secs(120), run: qlut_t_depths },
        Criterion { id: 4, name: "exhaustive functional checks", budget: Duration::from_secs(300), run: functional },
        Criterion { id: 5, name: "lowering equivalence", budget: Duration::from_secs(120), run: lowering_equivalence },
        Criterion { id: 6, name: "growth fits", budget: Duration::from_secs(300), run: growth_fits },
        Criterion { id: 7, name: "sigmoid max error", budget: Duration::from_secs(300), run: sigmoid_error },
        Criterion { id: 8, name: "seeded properties", budget: Duration::from_secs(180), run: properties },
    ];

    let mut unexpected = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > c.budget => Err(format!("{detail}; took {elapsed:.2?}, budget {:?}", c.budget)),
            r => r,
        };
        match &result {
            Ok(detail) => println!("criterion {} ({}): PASS [{elapsed:.2?}] {detail}", c.id, c.name),
            Err(why) => println!("criterion {} ({}): FAIL [{elapsed:.2?}] {why}", c.id, c.name),
        }
        let expected_failure = c.id == 2 && cost_table_failure_is_the_known_misprint();
        if result.is_err() && !expected_failure {
            unexpected.push(c.id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
