//! Permutation, dense and sparse simulators.

use std::collections::HashMap;

use num_complex::Complex64;

use super::basis::BasisState;
use super::exact::{ExactAmplitude, ZOmega};
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

pub const STATEVECTOR_QUBIT_LIMIT: usize = 20;
/// Sparse states are indexed by `u128`.
pub const SPARSE_QUBIT_LIMIT: usize = 128;
pub const SPARSE_SUPPORT_LIMIT: usize = 1 << 20;

fn check_width(circuit: &Circuit, input: &BasisState) -> Result<()> {
    if input.width() != circuit.qubit_count {
        return Err(Error::WidthMismatch {
            expected: circuit.qubit_count,
            actual: input.width(),
        });
    }
    Ok(())
}

/// Classical action of a permutation gate on a basis state.
pub fn apply_permutation(g: &Gate, s: &mut BasisState) -> Result<()> {
    match g {
        Gate::X(q) => s.flip(*q),
        Gate::Cnot { control, target } => {
            if s.get(*control) {
                s.flip(*target)
            }
        }
        Gate::Swap(a, b) => s.swap(*a, *b),
        Gate::Toffoli { controls, target } => {
            if s.get(controls[0]) && s.get(controls[1]) {
                s.flip(*target)
            }
        }
        Gate::Mcx { controls, target } => {
            if controls.iter().all(|c| s.get(*c)) {
                s.flip(*target)
            }
        }
        Gate::Cswap { control, a, b } => {
            if s.get(*control) {
                s.swap(*a, *b)
            }
        }
        other => return Err(Error::NonPermutationGate(other.name().to_string())),
    }
    Ok(())
}

/// Runs a circuit of permutation gates on a basis input.
pub fn simulate_macro(circuit: &Circuit, input: &BasisState) -> Result<BasisState> {
    check_width(circuit, input)?;
    if let Some(g) = circuit.gates.iter().find(|g| !g.is_permutation()) {
        return Err(Error::NonPermutationGate(g.name().to_string()));
    }
    let mut s = input.clone();
    for g in &circuit.gates {
        apply_permutation(g, &mut s)?;
    }
    Ok(s)
}

fn bit(index: u128, q: usize) -> bool {
    (index >> q) & 1 == 1
}

fn permute_index(g: &Gate, i: u128) -> u128 {
    let swap = |i: u128, a: usize, b: usize| {
        if bit(i, a) != bit(i, b) {
            i ^ (1 << a) ^ (1 << b)
        } else {
            i
        }
    };
    match g {
        Gate::X(q) => i ^ (1 << q.0),
        Gate::Cnot { control, target } if bit(i, control.0) => i ^ (1 << target.0),
        Gate::Swap(a, b) => swap(i, a.0, b.0),
        Gate::Toffoli { controls, target } if controls.iter().all(|c| bit(i, c.0)) => {
            i ^ (1 << target.0)
        }
        Gate::Mcx { controls, target } if controls.iter().all(|c| bit(i, c.0)) => {
            i ^ (1 << target.0)
        }
        Gate::Cswap { control, a, b } if bit(i, control.0) => swap(i, a.0, b.0),
        _ => i,
    }
}

/// Power of ω picked up by the `|1⟩` component of a diagonal gate.
fn phase_of(g: &Gate) -> Option<(usize, u32)> {
    match g {
        Gate::S(q) => Some((q.0, 2)),
        Gate::Sdg(q) => Some((q.0, 6)),
        Gate::T(q) => Some((q.0, 1)),
        Gate::Tdg(q) => Some((q.0, 7)),
        Gate::PhasePower { qubit, k } => Some((qubit.0, k.rem_euclid(8) as u32)),
        _ => None,
    }
}

/// Amplitude arithmetic shared by the dense simulators. `H` is applied
/// unnormalized; the caller accounts for the `1/√2`.
trait Amp: Copy + Send + Sync {
    const ZERO: Self;
    fn plus(self, o: Self) -> Self;
    fn minus(self, o: Self) -> Self;
    fn omega(self, j: u32) -> Self;
}

impl Amp for ZOmega {
    const ZERO: Self = ZOmega::ZERO;
    fn plus(self, o: Self) -> Self {
        self + o
    }
    fn minus(self, o: Self) -> Self {
        self - o
    }
    fn omega(self, j: u32) -> Self {
        self.mul_omega(j)
    }
}

impl Amp for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);
    fn plus(self, o: Self) -> Self {
        self + o
    }
    fn minus(self, o: Self) -> Self {
        self - o
    }
    fn omega(self, j: u32) -> Self {
        self * Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4 * j as f64)
    }
}

/// Returns `true` when an unnormalized Hadamard was applied.
fn apply_dense<A: Amp>(g: &Gate, amps: &mut Vec<A>) -> bool {
    match g {
        Gate::H(q) => {
            let m = 1usize << q.0;
            for i in 0..amps.len() {
                if i & m == 0 {
                    let (x0, x1) = (amps[i], amps[i | m]);
                    amps[i] = x0.plus(x1);
                    amps[i | m] = x0.minus(x1);
                }
            }
            true
        }
        g if phase_of(g).is_some() => {
            let (q, j) = phase_of(g).unwrap();
            let m = 1usize << q;
            for (i, a) in amps.iter_mut().enumerate() {
                if i & m != 0 {
                    *a = a.omega(j);
                }
            }
            false
        }
        g => {
            let mut next = vec![A::ZERO; amps.len()];
            for (i, &a) in amps.iter().enumerate() {
                next[permute_index(g, i as u128) as usize] = a;
            }
            *amps = next;
            false
        }
    }
}

fn check_dense(circuit: &Circuit, input: &BasisState) -> Result<usize> {
    check_width(circuit, input)?;
    if circuit.qubit_count > STATEVECTOR_QUBIT_LIMIT {
        return Err(Error::TooManyQubits {
            qubits: circuit.qubit_count,
            limit: STATEVECTOR_QUBIT_LIMIT,
        });
    }
    Ok(input.index().expect("width checked") as usize)
}

/// Dense floating-point statevector on a basis input. Index bit `i` is
/// qubit `i`.
pub fn simulate_statevector(circuit: &Circuit, input: &BasisState) -> Result<Vec<Complex64>> {
    let start = check_dense(circuit, input)?;
    let mut amps = vec![Complex64::ZERO; 1 << circuit.qubit_count];
    amps[start] = Complex64::new(1.0, 0.0);
    for g in &circuit.gates {
        if apply_dense(g, &mut amps) {
            let r = std::f64::consts::FRAC_1_SQRT_2;
            amps.iter_mut().for_each(|a| *a *= r);
        }
    }
    Ok(amps)
}

/// Dense exact state: amplitude `i` is `numerators[i] / √2^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactState {
    pub qubit_count: usize,
    pub k: u32,
    pub numerators: Vec<ZOmega>,
}

impl ExactState {
    fn reduce(&mut self) {
        while self.k > 0 {
            let halved: Option<Vec<ZOmega>> =
                self.numerators.iter().map(|z| z.div_sqrt2()).collect();
            match halved {
                Some(h) => {
                    self.numerators = h;
                    self.k -= 1;
                }
                None => break,
            }
        }
    }

    pub fn amplitude(&self, index: usize) -> ExactAmplitude {
        ExactAmplitude::new(self.numerators[index], self.k)
    }

    /// Exact check that the squared norm is 1.
    pub fn norm_is_one(&self) -> bool {
        let (p, q) = self
            .numerators
            .iter()
            .map(ZOmega::norm_sqr)
            .fold((0i128, 0i128), |(p, q), (a, b)| (p + a, q + b));
        q == 0 && p == 1i128 << self.k
    }

    /// Nonzero amplitudes in index order.
    pub fn support(&self) -> Vec<(usize, ExactAmplitude)> {
        self.numerators
            .iter()
            .enumerate()
            .filter(|(_, z)| !z.is_zero())
            .map(|(i, _)| (i, self.amplitude(i)))
            .collect()
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        (0..self.numerators.len())
            .map(|i| self.amplitude(i).to_complex())
            .collect()
    }
}

/// Dense exact statevector on a basis input.
pub fn simulate_statevector_exact(circuit: &Circuit, input: &BasisState) -> Result<ExactState> {
    let start = check_dense(circuit, input)?;
    let mut state = ExactState {
        qubit_count: circuit.qubit_count,
        k: 0,
        numerators: vec![ZOmega::ZERO; 1 << circuit.qubit_count],
    };
    state.numerators[start] = ZOmega::ONE;
    for g in &circuit.gates {
        if apply_dense(g, &mut state.numerators) {
            state.k += 1;
            state.reduce();
        }
    }
    Ok(state)
}

/// Exact state stored as a map over its nonzero basis indices.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseState {
    pub qubit_count: usize,
    pub k: u32,
    pub amplitudes: HashMap<u128, ZOmega>,
}

impl SparseState {
    fn apply(&mut self, g: &Gate) {
        match g {
            Gate::H(q) => {
                let m = 1u128 << q.0;
                let mut next: HashMap<u128, ZOmega> = HashMap::with_capacity(self.amplitudes.len() * 2);
                for (&i, &z) in &self.amplitudes {
                    let (lo, hi) = (i & !m, i | m);
                    let signed = if i & m == 0 { z } else { -z };
                    for (idx, add) in [(lo, z), (hi, signed)] {
                        let e = next.entry(idx).or_default();
                        *e = *e + add;
                    }
                }
                next.retain(|_, z| !z.is_zero());
                self.amplitudes = next;
                self.k += 1;
                self.reduce();
            }
            g if phase_of(g).is_some() => {
                let (q, j) = phase_of(g).unwrap();
                for (&i, z) in self.amplitudes.iter_mut() {
                    if bit(i, q) {
                        *z = z.mul_omega(j);
                    }
                }
            }
            g => {
                self.amplitudes = self
                    .amplitudes
                    .drain()
                    .map(|(i, z)| (permute_index(g, i), z))
                    .collect();
            }
        }
    }

    fn reduce(&mut self) {
        while self.k > 0 && self.amplitudes.values().all(|z| z.div_sqrt2().is_some()) {
            for z in self.amplitudes.values_mut() {
                *z = z.div_sqrt2().unwrap();
            }
            self.k -= 1;
        }
    }

    /// `(state, ω-power)` when the state is a single basis state times `ω^j`.
    pub fn as_basis_state(&self) -> Option<(BasisState, u32)> {
        if self.amplitudes.len() != 1 {
            return None;
        }
        let (&i, &z) = self.amplitudes.iter().next()?;
        let phase = ExactAmplitude::new(z, self.k).as_omega_power()?;
        Some((BasisState::from_index(i, self.qubit_count), phase))
    }
}

/// Exact simulation tracking only nonzero amplitudes; suited to circuits
/// whose states stay close to basis states. Fails once more than
/// [`SPARSE_SUPPORT_LIMIT`] amplitudes are nonzero.
pub fn simulate_sparse(circuit: &Circuit, input: &BasisState) -> Result<SparseState> {
    check_width(circuit, input)?;
    if circuit.qubit_count > SPARSE_QUBIT_LIMIT {
        return Err(Error::TooManyQubits {
            qubits: circuit.qubit_count,
            limit: SPARSE_QUBIT_LIMIT,
        });
    }
    let mut state = SparseState {
        qubit_count: circuit.qubit_count,
        k: 0,
        amplitudes: HashMap::from([(input.index().expect("width checked"), ZOmega::ONE)]),
    };
    for g in &circuit.gates {
        state.apply(g);
        if state.amplitudes.len() > SPARSE_SUPPORT_LIMIT {
            return Err(Error::SupportTooLarge {
                limit: SPARSE_SUPPORT_LIMIT,
            });
        }
    }
    Ok(state)
}
