//! An independent OpenQASM 2.0 reader: the exported text is parsed,
//! type-checked and linearized by the openqasm crate, and the resulting U/CX
//! stream is simulated here in floating point.

use num_complex::Complex64;
use openqasm::parser::FilePolicy;
use openqasm::translate::{GateWriter, Linearize, ProgramVisitor, Value};
use openqasm::{Parser, SourceCache, Symbol};
use qact::sim::{simulate_statevector, BasisState};
use qact::Circuit;

/// A qelib1 that also defines swap and cswap, which the bundled copy lacks.
pub const EXTRA_QELIB: &str = "
gate u3(theta,phi,lambda) q { U(theta,phi,lambda) q; }
gate u2(phi,lambda) q { U(pi/2,phi,lambda) q; }
gate u1(lambda) q { U(0,0,lambda) q; }
gate cx c,t { CX c,t; }
gate x a { u3(pi,0,pi) a; }
gate h a { u2(0,pi) a; }
gate s a { u1(pi/2) a; }
gate sdg a { u1(-pi/2) a; }
gate t a { u1(pi/4) a; }
gate tdg a { u1(-pi/4) a; }
gate ccx a,b,c { h c; cx b,c; tdg c; cx a,c; t c; cx b,c; tdg c; cx a,c; t b; t c; h c; cx a,b; t a; tdg b; cx a,b; }
gate swap a,b { cx a,b; cx b,a; cx a,b; }
gate cswap a,b,c { cx c,b; ccx a,b,c; cx c,b; }
";

pub enum Op {
    U([f64; 3], usize),
    Cx(usize, usize),
}

pub struct Collect<'a>(&'a mut Vec<Op>);

#[derive(Debug)]
pub struct Unsupported(String);

impl std::fmt::Display for Unsupported {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Unsupported {}

/// `a + b·π` as a float.
pub fn radians(v: Value) -> f64 {
    let a = *v.a.numer() as f64 / *v.a.denom() as f64;
    let b = *v.b.numer() as f64 / *v.b.denom() as f64;
    a + std::f64::consts::PI * b
}

impl GateWriter for Collect<'_> {
    type Error = Unsupported;

    fn initialize(&mut self, _: &[Symbol], _: &[Symbol]) -> Result<(), Unsupported> {
        Ok(())
    }
    fn write_cx(&mut self, copy: usize, xor: usize) -> Result<(), Unsupported> {
        self.0.push(Op::Cx(copy, xor));
        Ok(())
    }
    fn write_u(&mut self, theta: Value, phi: Value, lambda: Value, reg: usize) -> Result<(), Unsupported> {
        self.0.push(Op::U([radians(theta), radians(phi), radians(lambda)], reg));
        Ok(())
    }
    fn write_opaque(&mut self, name: &Symbol, _: &[Value], _: &[usize]) -> Result<(), Unsupported> {
        Err(Unsupported(format!("opaque gate {name}")))
    }
    fn write_barrier(&mut self, _: &[usize]) -> Result<(), Unsupported> {
        Ok(())
    }
    fn write_measure(&mut self, _: usize, _: usize) -> Result<(), Unsupported> {
        Err(Unsupported("measure".into()))
    }
    fn write_reset(&mut self, _: usize) -> Result<(), Unsupported> {
        Err(Unsupported("reset".into()))
    }
    fn start_conditional(&mut self, _: usize, _: usize, _: u64) -> Result<(), Unsupported> {
        Err(Unsupported("conditional".into()))
    }
    fn end_conditional(&mut self) -> Result<(), Unsupported> {
        Ok(())
    }
}

pub fn parse(text: &str, extra: bool) -> Vec<Op> {
    let mut cache = SourceCache::new();
    let mut policy = FilePolicy::filesystem();
    if extra {
        policy = policy.with_file("qelib1.inc", EXTRA_QELIB);
    }
    let mut parser = Parser::new(&mut cache).with_file_policy(policy);
    parser.parse_source(text.to_string(), None::<&str>);
    let program = parser.done().unwrap_or_else(|e| panic!("{} parse errors in\n{text}", e.len()));
    program
        .type_check()
        .unwrap_or_else(|e| panic!("{} type errors", e.len()));
    let mut ops = Vec::new();
    let mut l = Linearize::new(Collect(&mut ops), usize::MAX);
    l.visit_program(&program).unwrap_or_else(|_| panic!("linearize failed"));
    drop(l);
    ops
}

pub fn run(ops: &[Op], n: usize, input: usize) -> Vec<Complex64> {
    let mut psi = vec![Complex64::new(0.0, 0.0); 1 << n];
    psi[input] = Complex64::new(1.0, 0.0);
    for op in ops {
        match *op {
            Op::Cx(c, t) => {
                for i in 0..psi.len() {
                    if (i >> c) & 1 == 1 && (i >> t) & 1 == 0 {
                        psi.swap(i, i | 1 << t);
                    }
                }
            }
            Op::U([theta, phi, lambda], q) => {
                let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
                let e = |a: f64| Complex64::from_polar(1.0, a);
                let m = [[c.into(), -e(lambda) * s], [e(phi) * s, e(phi + lambda) * c]];
                for i in 0..psi.len() {
                    if (i >> q) & 1 == 0 {
                        let (a, b) = (psi[i], psi[i | 1 << q]);
                        psi[i] = m[0][0] * a + m[0][1] * b;
                        psi[i | 1 << q] = m[1][0] * a + m[1][1] * b;
                    }
                }
            }
        }
    }
    psi
}

/// Compares every column of the parsed program with our simulator, up to one
/// global phase.
pub fn assert_same_unitary(c: &Circuit, ops: &[Op]) {
    let n = c.qubit_count;
    let mut phase: Option<Complex64> = None;
    for i in 0..1 << n {
        let ours = simulate_statevector(c, &BasisState::from_index(i as u128, n)).unwrap();
        let theirs = run(ops, n, i);
        let (k, _) = ours
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .unwrap();
        let p = *phase.get_or_insert(theirs[k] / ours[k]);
        for (a, b) in ours.iter().zip(&theirs) {
            assert!((a * p - b).norm() < 1e-9, "column {i}");
        }
    }
}
