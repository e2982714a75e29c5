//! Exact arithmetic in `Z[ω, 1/√2]`, `ω = e^{iπ/4}`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// `a + bω + cω² + dω³` with integer coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZOmega(pub [i64; 4]);

impl ZOmega {
    pub const ZERO: ZOmega = ZOmega([0; 4]);
    pub const ONE: ZOmega = ZOmega([1, 0, 0, 0]);

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    /// Multiplication by `ω^j`.
    pub fn mul_omega(self, j: u32) -> ZOmega {
        let mut z = self.0;
        for _ in 0..j % 8 {
            let [a, b, c, d] = z;
            z = [-d, a, b, c];
        }
        ZOmega(z)
    }

    /// Multiplication by `√2 = ω − ω³`.
    pub fn mul_sqrt2(self) -> ZOmega {
        let [a, b, c, d] = self.0;
        ZOmega([b - d, a + c, b + d, c - a])
    }

    /// Division by `√2` when the result stays integral.
    pub fn div_sqrt2(self) -> Option<ZOmega> {
        let [a, b, c, d] = self.mul_sqrt2().0;
        if [a, b, c, d].iter().all(|x| x % 2 == 0) {
            Some(ZOmega([a / 2, b / 2, c / 2, d / 2]))
        } else {
            None
        }
    }

    /// `|z|² = p + q√2`, returned as `(p, q)`.
    pub fn norm_sqr(&self) -> (i128, i128) {
        let [a, b, c, d] = self.0.map(i128::from);
        (a * a + b * b + c * c + d * d, a * b + b * c + c * d - d * a)
    }

    pub fn to_complex(&self) -> Complex64 {
        let w = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        self.0
            .iter()
            .enumerate()
            .map(|(j, &x)| w.powu(j as u32) * x as f64)
            .sum()
    }
}

impl Add for ZOmega {
    type Output = ZOmega;
    fn add(self, o: ZOmega) -> ZOmega {
        ZOmega(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for ZOmega {
    type Output = ZOmega;
    fn sub(self, o: ZOmega) -> ZOmega {
        ZOmega(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for ZOmega {
    type Output = ZOmega;
    fn neg(self) -> ZOmega {
        ZOmega(self.0.map(|x| -x))
    }
}

/// `(a + bω + cω² + dω³) / √2^k`, kept with the smallest `k ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExactAmplitude {
    pub coefficients: [i64; 4],
    pub k: u32,
}

impl ExactAmplitude {
    pub const ZERO: ExactAmplitude = ExactAmplitude {
        coefficients: [0; 4],
        k: 0,
    };
    pub const ONE: ExactAmplitude = ExactAmplitude {
        coefficients: [1, 0, 0, 0],
        k: 0,
    };

    pub fn new(numerator: ZOmega, k: u32) -> Self {
        let (mut z, mut k) = (numerator, k);
        if z.is_zero() {
            return ExactAmplitude::ZERO;
        }
        while k > 0 {
            match z.div_sqrt2() {
                Some(q) => {
                    z = q;
                    k -= 1;
                }
                None => break,
            }
        }
        ExactAmplitude {
            coefficients: z.0,
            k,
        }
    }

    pub fn omega_power(j: u32) -> Self {
        ExactAmplitude::new(ZOmega::ONE.mul_omega(j), 0)
    }

    pub fn numerator(&self) -> ZOmega {
        ZOmega(self.coefficients)
    }

    pub fn is_zero(&self) -> bool {
        self.numerator().is_zero()
    }

    /// `Some(j)` when the value is exactly `ω^j`.
    pub fn as_omega_power(&self) -> Option<u32> {
        (0..8).find(|&j| *self == ExactAmplitude::omega_power(j))
    }

    pub fn mul_omega(&self, j: u32) -> Self {
        ExactAmplitude::new(self.numerator().mul_omega(j), self.k)
    }

    /// `|z|² = (p + q√2) / 2^k`.
    pub fn norm_sqr(&self) -> (i128, i128, u32) {
        let (p, q) = self.numerator().norm_sqr();
        (p, q, self.k)
    }

    pub fn to_complex(&self) -> Complex64 {
        self.numerator().to_complex() / std::f64::consts::SQRT_2.powi(self.k as i32)
    }
}

impl Add for ExactAmplitude {
    type Output = ExactAmplitude;
    fn add(self, o: ExactAmplitude) -> ExactAmplitude {
        let (mut x, mut y) = (self.numerator(), o.numerator());
        let k = self.k.max(o.k);
        for _ in self.k..k {
            x = x.mul_sqrt2();
        }
        for _ in o.k..k {
            y = y.mul_sqrt2();
        }
        ExactAmplitude::new(x + y, k)
    }
}

impl Neg for ExactAmplitude {
    type Output = ExactAmplitude;
    fn neg(self) -> ExactAmplitude {
        ExactAmplitude::new(-self.numerator(), self.k)
    }
}

impl fmt::Display for ExactAmplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.coefficients;
        write!(f, "({a} + {b}ω + {c}ω² + {d}ω³)/√2^{}", self.k)
    }
}
