#![allow(dead_code)]

pub mod qasm;
pub mod table;

use qact::leaky::{Encoding, LeakySpec};
use qact::qlut::FloatFormat;
use qact::sim::{bits_msb_first, simulate_statevector_exact, value_msb_first, BasisState};
use qact::Circuit;

/// Checks exactly that `c` sends every basis state `|i⟩` to `ω^j |perm(i)⟩`
/// for one `j` shared by all columns.
pub fn implements_permutation(c: &Circuit, perm: impl Fn(u128) -> u128) -> Result<(), String> {
    let n = c.qubit_count;
    let mut phase = None;
    for i in 0..1u128 << n {
        let state = simulate_statevector_exact(c, &BasisState::from_index(i, n)).map_err(|e| e.to_string())?;
        let support = state.support();
        if support.len() != 1 {
            return Err(format!("column {i}: {} nonzero amplitudes", support.len()));
        }
        let (index, amp) = &support[0];
        if *index as u128 != perm(i) {
            return Err(format!("column {i}: lands on {index}, expected {}", perm(i)));
        }
        let j = amp
            .as_omega_power()
            .ok_or_else(|| format!("column {i}: amplitude {amp} is not a power of ω"))?;
        match phase {
            None => phase = Some(j),
            Some(p) if p != j => return Err(format!("column {i}: phase ω^{j}, column 0 had ω^{p}")),
            _ => {}
        }
    }
    Ok(())
}

pub fn bit(x: u128, q: usize) -> bool {
    (x >> q) & 1 == 1
}

pub fn flip(x: u128, q: usize) -> u128 {
    x ^ (1 << q)
}

pub fn swap_bits(x: u128, a: usize, b: usize) -> u128 {
    if bit(x, a) != bit(x, b) {
        x ^ (1 << a) ^ (1 << b)
    } else {
        x
    }
}

/// Least-squares line `y = a + b·x`, with R².
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let b = sxy / sxx;
    let a = my - b * mx;
    let ss_res: f64 = xs.iter().zip(ys).map(|(x, y)| (y - a - b * x).powi(2)).sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    (a, b, 1.0 - ss_res / ss_tot)
}

/// Rounds to `digits` significant figures.
pub fn round_sig(v: f64, digits: i32) -> f64 {
    if v == 0.0 {
        return 0.0;
    }
    let scale = 10f64.powi(digits - 1 - v.abs().log10().floor() as i32);
    (v * scale).round() / scale
}

/// Signed value of an `n`-bit pattern under each encoding.
pub fn signed_value(bits: &[bool], encoding: Encoding) -> f64 {
    let n = bits.len();
    let raw = value_msb_first(bits) as f64;
    let magnitude = value_msb_first(&bits[1..]) as f64;
    match (bits[0], encoding) {
        (false, _) => raw,
        (true, Encoding::TrueForm) => -magnitude,
        (true, Encoding::TwosComplement) => raw - 2f64.powi(n as i32),
    }
}

/// `max(x, αx)` written back as an `m`-bit fixed-point pattern with `e`
/// fraction bits.
pub fn leaky_oracle(bits: &[bool], spec: &LeakySpec) -> Vec<bool> {
    let x = signed_value(bits, spec.encoding);
    let y = x.max(spec.alpha() * x);
    let scaled = y * 2f64.powi(spec.alpha_exponent as i32);
    assert_eq!(scaled.fract(), 0.0);
    let m = spec.m();
    match spec.encoding {
        Encoding::TwosComplement => bits_msb_first((scaled as i128).rem_euclid(1 << m) as u128, m),
        Encoding::TrueForm => {
            let mut out = bits_msb_first(scaled.abs() as u128, m);
            out[0] = bits[0];
            out
        }
    }
}

/// 1-4-3 minifloat decoded by hand: bias 7, subnormals at exponent 0,
/// infinities and NaNs at exponent 15.
pub fn f8_by_hand(p: u8) -> f64 {
    let sign = if p & 0x80 != 0 { -1.0 } else { 1.0 };
    let e = ((p >> 3) & 0xf) as i32;
    let m = (p & 7) as f64;
    match e {
        0 => sign * m / 8.0 * 2f64.powi(-6),
        15 if m == 0.0 => sign * f64::INFINITY,
        15 => f64::NAN,
        _ => sign * (1.0 + m / 8.0) * 2f64.powi(e - 7),
    }
}

pub fn sigmoid_oracle(x: &[bool]) -> Vec<bool> {
    let v = f8_by_hand(value_msb_first(x) as u8);
    let y = 1.0 / (1.0 + (-v).exp());
    bits_msb_first(FloatFormat::F8.encode(y), 8)
}
