//! Scalar abstraction for precision-parametrised evaluation.
//!
//! Every numeric routine is generic over [`Real`]. `f64` serves the default
//! 53-bit precision; [`Mp`] wraps an MPFR float for anything wider. Values are
//! always created against an explicit precision so that no operand silently
//! falls back to a narrower default.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::Float;

pub const DOUBLE_BITS: u32 = 53;

pub trait Real:
    Clone
    + fmt::Debug
    + Send
    + Sync
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(prec: u32, v: f64) -> Self;
    fn from_i64(prec: u32, v: i64) -> Self;
    fn pi(prec: u32) -> Self;

    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn ln(&self) -> Self;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;
    fn is_finite(&self) -> bool;

    fn sin_cos(&self) -> (Self, Self) {
        (self.sin(), self.cos())
    }

    fn zero(prec: u32) -> Self {
        Self::from_i64(prec, 0)
    }

    fn one(prec: u32) -> Self {
        Self::from_i64(prec, 1)
    }
}

impl Real for f64 {
    fn from_f64(_: u32, v: f64) -> Self {
        v
    }
    fn from_i64(_: u32, v: i64) -> Self {
        v as f64
    }
    fn pi(_: u32) -> Self {
        std::f64::consts::PI
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn sin_cos(&self) -> (Self, Self) {
        f64::sin_cos(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

/// Multiple-precision real backed by MPFR.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct Mp(pub Float);

macro_rules! mp_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Mp {
            type Output = Mp;
            fn $method(self, rhs: Mp) -> Mp {
                Mp($tr::$method(self.0, rhs.0))
            }
        }
    };
}

mp_binop!(Add, add);
mp_binop!(Sub, sub);
mp_binop!(Mul, mul);
mp_binop!(Div, div);

impl Neg for Mp {
    type Output = Mp;
    fn neg(self) -> Mp {
        Mp(-self.0)
    }
}

impl Real for Mp {
    fn from_f64(prec: u32, v: f64) -> Self {
        Mp(Float::with_val(prec, v))
    }
    fn from_i64(prec: u32, v: i64) -> Self {
        Mp(Float::with_val(prec, v))
    }
    fn pi(prec: u32) -> Self {
        Mp(Float::with_val(prec, Constant::Pi))
    }
    fn sin(&self) -> Self {
        Mp(self.0.clone().sin())
    }
    fn cos(&self) -> Self {
        Mp(self.0.clone().cos())
    }
    fn sin_cos(&self) -> (Self, Self) {
        let (s, c) = self.0.clone().sin_cos(Float::new(self.0.prec()));
        (Mp(s), Mp(c))
    }
    fn sqrt(&self) -> Self {
        Mp(self.0.clone().sqrt())
    }
    fn ln(&self) -> Self {
        Mp(self.0.clone().ln())
    }
    fn abs(&self) -> Self {
        Mp(self.0.clone().abs())
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
}

/// Complex number over a [`Real`] scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct Cx<R> {
    pub re: R,
    pub im: R,
}

impl<R: Real> Cx<R> {
    pub fn new(re: R, im: R) -> Self {
        Cx { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Cx::new(R::zero(prec), R::zero(prec))
    }

    pub fn real(re: R, prec: u32) -> Self {
        Cx::new(re, R::zero(prec))
    }

    pub fn conj(&self) -> Self {
        Cx::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> R {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn abs(&self) -> R {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, k: &R) -> Self {
        Cx::new(self.re.clone() * k.clone(), self.im.clone() * k.clone())
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl<R: Real> Add for Cx<R> {
    type Output = Cx<R>;
    fn add(self, rhs: Self) -> Self {
        Cx::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<R: Real> Sub for Cx<R> {
    type Output = Cx<R>;
    fn sub(self, rhs: Self) -> Self {
        Cx::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<R: Real> Mul for Cx<R> {
    type Output = Cx<R>;
    fn mul(self, rhs: Self) -> Self {
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        Cx::new(re, im)
    }
}

impl<R: Real> Neg for Cx<R> {
    type Output = Cx<R>;
    fn neg(self) -> Self {
        Cx::new(-self.re, -self.im)
    }
}
