//! Arithmetic at the root `A = exp(iπ/r)`: exact phase exponents, quantum
//! integers, loop values of colored unknots and the normalisation `η_r`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::real::{Cx, Real, DOUBLE_BITS};

/// Odd level `r ≥ 3` together with the working precision used by every
/// numeric evaluation at that level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TqftParameter {
    r: u32,
    precision: u32,
}

impl TqftParameter {
    /// Level `r` at the default 53-bit precision.
    pub fn new(r: i64) -> Result<Self> {
        Self::with_precision(r, DOUBLE_BITS)
    }

    pub fn with_precision(r: i64, precision: u32) -> Result<Self> {
        if r < 3 || r % 2 == 0 || r > i64::from(u32::MAX / 8) {
            return Err(Error::InvalidLevel(r));
        }
        if precision < DOUBLE_BITS {
            return Err(Error::InvalidPrecision(precision));
        }
        Ok(TqftParameter {
            r: r as u32,
            precision,
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Number of basis colors, `(r - 1) / 2`.
    pub fn m(&self) -> usize {
        (self.r as usize - 1) / 2
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn with_bits(&self, precision: u32) -> Result<Self> {
        Self::with_precision(i64::from(self.r), precision)
    }

    /// Whether evaluation at this precision goes through MPFR rather than `f64`.
    pub fn is_extended(&self) -> bool {
        self.precision > DOUBLE_BITS
    }

    /// The exponent `A^{n/2}` for an arbitrary integer `n`.
    pub fn half_units(&self, n: i64) -> PhaseExponent {
        let modulus = 4 * i64::from(self.r);
        PhaseExponent {
            half_units: n.rem_euclid(modulus) as u32,
            r: self.r,
        }
    }

    /// The exponent of `A^k`.
    pub fn a_power(&self, k: i64) -> PhaseExponent {
        self.half_units(2 * k)
    }
}

/// An element of `(1/2)ℤ` taken modulo `2r`, standing for the unit
/// `A^{n/2} = exp(iπn / 2r)`. Stored as `n mod 4r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseExponent {
    half_units: u32,
    r: u32,
}

impl PhaseExponent {
    pub fn half_units(&self) -> u32 {
        self.half_units
    }

    pub fn level(&self) -> u32 {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.half_units == 0
    }

    /// `Some(k)` with `0 ≤ k < 2r` when this is an integral power `A^k`.
    pub fn a_exponent(&self) -> Option<u32> {
        self.half_units
            .is_multiple_of(2)
            .then_some(self.half_units / 2)
    }

    /// The exponent of `-A^{n/2} = A^{n/2 + r}`.
    pub fn half_turn(self) -> Self {
        PhaseExponent {
            half_units: (self.half_units + 2 * self.r) % self.modulus(),
            r: self.r,
        }
    }

    fn modulus(&self) -> u32 {
        4 * self.r
    }
}

impl Add for PhaseExponent {
    type Output = PhaseExponent;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.r, rhs.r, "exponents at different levels");
        let n = self.modulus();
        PhaseExponent {
            half_units: ((u64::from(self.half_units) + u64::from(rhs.half_units)) % u64::from(n))
                as u32,
            r: self.r,
        }
    }
}

impl Neg for PhaseExponent {
    type Output = PhaseExponent;
    fn neg(self) -> Self {
        let n = self.modulus();
        PhaseExponent {
            half_units: (n - self.half_units) % n,
            r: self.r,
        }
    }
}

impl Sub for PhaseExponent {
    type Output = PhaseExponent;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl fmt::Display for PhaseExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.a_exponent() {
            Some(k) => write!(f, "A^{k}"),
            None => write!(f, "A^({}/2)", self.half_units),
        }
    }
}

/// `2π n / r` with `n` reduced modulo `r` first, so the argument stays small.
fn two_pi_over_r<R: Real>(param: &TqftParameter, n: i64) -> R {
    let prec = param.precision();
    let r = i64::from(param.r());
    let n = n.rem_euclid(r);
    R::from_i64(prec, 2 * n) * R::pi(prec) / R::from_i64(prec, r)
}

pub fn phase_in<R: Real>(param: &TqftParameter, e: PhaseExponent) -> Cx<R> {
    debug_assert_eq!(param.r(), e.level());
    let prec = param.precision();
    let angle = R::from_i64(prec, i64::from(e.half_units())) * R::pi(prec)
        / R::from_i64(prec, 2 * i64::from(param.r()));
    let (s, c) = angle.sin_cos();
    Cx::new(c, s)
}

/// Numeric value of `A^{n/2}`.
pub fn phase(param: &TqftParameter, e: PhaseExponent) -> Complex64 {
    phase_in::<f64>(param, e).to_c64()
}

pub fn quantum_integer_in<R: Real>(param: &TqftParameter, n: i64) -> R {
    two_pi_over_r::<R>(param, n).sin() / two_pi_over_r::<R>(param, 1).sin()
}

/// The quantum integer `[n] = sin(2πn/r) / sin(2π/r)`.
pub fn quantum_integer(param: &TqftParameter, n: i64) -> f64 {
    quantum_integer_in::<f64>(param, n)
}

pub fn loop_value_in<R: Real>(param: &TqftParameter, n: i64) -> Result<R> {
    if n < 1 {
        return Err(Error::NonPositiveColor(n));
    }
    let q = quantum_integer_in::<R>(param, n);
    Ok(if n % 2 == 0 { -q } else { q })
}

/// Value `(-1)^{n-1} [n]` of the unknot colored by the `(n-1)`-th
/// Jones–Wenzl idempotent.
pub fn loop_value(param: &TqftParameter, n: i64) -> Result<f64> {
    loop_value_in::<f64>(param, n)
}

pub fn eta_in<R: Real>(param: &TqftParameter) -> R {
    let prec = param.precision();
    R::from_i64(prec, 2) * two_pi_over_r::<R>(param, 1).sin()
        / R::from_i64(prec, i64::from(param.r())).sqrt()
}

/// `η_r = 2 sin(2π/r) / √r`, taking `√(-r) = i√r`.
pub fn eta(param: &TqftParameter) -> f64 {
    eta_in::<f64>(param)
}
