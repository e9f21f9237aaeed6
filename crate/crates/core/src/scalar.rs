//! Scalar and algebra abstractions shared by the float and interval paths.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::interval::{ComplexInterval, Interval, IntervalError};

/// A commutative ring element with division where defined.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn from_i64(n: i64) -> Self;
    /// `p / q`, enclosed for interval types.
    fn from_ratio(p: i64, q: i64) -> Self;
    fn try_div(self, rhs: Self) -> Result<Self, IntervalError>;
    fn conj(self) -> Self;
    /// Enclosure of `|x|`.
    fn abs_enclosure(self) -> Interval;
    /// Upper bound of `|x|` as a float.
    fn abs_sup(self) -> f64 {
        self.abs_enclosure().hi()
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        p as f64 / q as f64
    }
    fn try_div(self, rhs: Self) -> Result<Self, IntervalError> {
        if rhs == 0.0 {
            Err(IntervalError::NotInvertible("0".into()))
        } else {
            Ok(self / rhs)
        }
    }
    fn conj(self) -> Self {
        self
    }
    fn abs_enclosure(self) -> Interval {
        Interval::point(self.abs())
    }
    fn abs_sup(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        Complex64::new(p as f64 / q as f64, 0.0)
    }
    fn try_div(self, rhs: Self) -> Result<Self, IntervalError> {
        if rhs.re == 0.0 && rhs.im == 0.0 {
            Err(IntervalError::NotInvertible("0".into()))
        } else if rhs.im == 0.0 {
            Ok(Complex64::new(self.re / rhs.re, self.im / rhs.re))
        } else {
            Ok(self / rhs)
        }
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn abs_enclosure(self) -> Interval {
        ComplexInterval::point(self.re, self.im).abs()
    }
    fn abs_sup(self) -> f64 {
        self.norm()
    }
}

impl Scalar for Interval {
    fn zero() -> Self {
        Interval::ZERO
    }
    fn one() -> Self {
        Interval::ONE
    }
    fn from_f64(x: f64) -> Self {
        Interval::point(x)
    }
    fn from_i64(n: i64) -> Self {
        Interval::exact(n)
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        Interval::ratio(p, q).expect("nonzero denominator")
    }
    fn try_div(self, rhs: Self) -> Result<Self, IntervalError> {
        self.checked_div(rhs)
    }
    fn conj(self) -> Self {
        self
    }
    fn abs_enclosure(self) -> Interval {
        self.abs()
    }
}

impl Scalar for ComplexInterval {
    fn zero() -> Self {
        ComplexInterval::ZERO
    }
    fn one() -> Self {
        ComplexInterval::ONE
    }
    fn from_f64(x: f64) -> Self {
        ComplexInterval::point(x, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        ComplexInterval::real(Interval::exact(n))
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        ComplexInterval::real(Interval::ratio(p, q).expect("nonzero denominator"))
    }
    fn try_div(self, rhs: Self) -> Result<Self, IntervalError> {
        self.checked_div(rhs)
    }
    fn conj(self) -> Self {
        ComplexInterval::conj(self)
    }
    fn abs_enclosure(self) -> Interval {
        self.abs()
    }
}

/// Ring-like structure on which the vector field is evaluated: scalars and
/// coefficient sequences alike.
pub trait Algebra: Clone {
    type S: Scalar;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, s: Self::S) -> Self;
    /// Constant element `s`, shaped like `self` where shape matters.
    fn constant_like(&self, s: Self::S) -> Self;
}

macro_rules! scalar_algebra {
    ($t:ty) => {
        impl Algebra for $t {
            type S = $t;
            fn add(&self, rhs: &Self) -> Self {
                *self + *rhs
            }
            fn sub(&self, rhs: &Self) -> Self {
                *self - *rhs
            }
            fn mul(&self, rhs: &Self) -> Self {
                *self * *rhs
            }
            fn neg(&self) -> Self {
                -*self
            }
            fn scale(&self, s: Self::S) -> Self {
                *self * s
            }
            fn constant_like(&self, s: Self::S) -> Self {
                s
            }
        }
    };
}

scalar_algebra!(f64);
scalar_algebra!(Complex64);
scalar_algebra!(Interval);
scalar_algebra!(ComplexInterval);

/// Interval lift of float scalars.
pub trait Enclose: Scalar {
    type Rigorous: Scalar;
    fn enclose(self) -> Self::Rigorous;
    /// Enclosure of the closed disk (or interval) of radius `r` around `self`.
    fn ball(self, r: f64) -> Self::Rigorous;
    fn lift_real(x: Interval) -> Self::Rigorous;
    fn midpoint(x: Self::Rigorous) -> Self;
}

impl Enclose for f64 {
    type Rigorous = Interval;
    fn enclose(self) -> Interval {
        Interval::point(self)
    }
    fn ball(self, r: f64) -> Interval {
        Interval::point(self).inflate(r)
    }
    fn lift_real(x: Interval) -> Interval {
        x
    }
    fn midpoint(x: Interval) -> f64 {
        x.mid()
    }
}

impl Enclose for Complex64 {
    type Rigorous = ComplexInterval;
    fn enclose(self) -> ComplexInterval {
        ComplexInterval::point(self.re, self.im)
    }
    fn ball(self, r: f64) -> ComplexInterval {
        ComplexInterval::point(self.re, self.im).inflate(r)
    }
    fn lift_real(x: Interval) -> ComplexInterval {
        ComplexInterval::real(x)
    }
    fn midpoint(x: ComplexInterval) -> Complex64 {
        x.mid()
    }
}
