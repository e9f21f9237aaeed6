//! Real and rectangular complex interval arithmetic.
//!
//! Outward rounding is emulated without touching the FPU rounding mode: every
//! endpoint is computed in round-to-nearest and its exact rounding error is
//! recovered with an error-free transformation (TwoSum, FMA residual). The
//! endpoint is moved by one ulp only when the error points the wrong way, so
//! exactly representable results stay degenerate (`3/4` prints as
//! `[0.75, 0.75]`). Near the subnormal range, where FMA residuals are no longer
//! exact, endpoints are widened unconditionally.
//!
//! Transcendental kernels (`exp`, `ln`, `cos`, `sin`) rely on the platform
//! libm, which is faithfully rounded; results are widened by two ulps.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Below this magnitude FMA-based residuals may be inexact.
const TINY: f64 = 1e-290;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IntervalError {
    #[error("not invertible: divisor {0} contains zero")]
    NotInvertible(String),
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("invalid interval bounds [{0}, {1}]")]
    InvalidBounds(f64, f64),
}

#[inline]
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

#[inline]
pub(crate) fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return if s == f64::INFINITY && a.is_finite() && b.is_finite() {
            f64::MAX
        } else {
            s
        };
    }
    if two_sum_err(a, b, s) < 0.0 || (s != 0.0 && s.abs() < TINY) {
        s.next_down()
    } else {
        s
    }
}

#[inline]
pub(crate) fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return if s == f64::NEG_INFINITY && a.is_finite() && b.is_finite() {
            f64::MIN
        } else {
            s
        };
    }
    if two_sum_err(a, b, s) > 0.0 || (s != 0.0 && s.abs() < TINY) {
        s.next_up()
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

#[inline]
pub(crate) fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

#[inline]
pub(crate) fn mul_down(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() {
        return if p == f64::INFINITY && a.is_finite() && b.is_finite() {
            f64::MAX
        } else {
            p
        };
    }
    if p.abs() < TINY {
        if a == 0.0 || b == 0.0 {
            return 0.0;
        }
        return p.next_down();
    }
    if a.mul_add(b, -p) < 0.0 {
        p.next_down()
    } else {
        p
    }
}

#[inline]
pub(crate) fn mul_up(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() {
        return if p == f64::NEG_INFINITY && a.is_finite() && b.is_finite() {
            f64::MIN
        } else {
            p
        };
    }
    if p.abs() < TINY {
        if a == 0.0 || b == 0.0 {
            return 0.0;
        }
        return p.next_up();
    }
    if a.mul_add(b, -p) > 0.0 {
        p.next_up()
    } else {
        p
    }
}

/// Sign of the exact rounding error `a/b - fl(a/b)`; `None` when not recoverable.
#[inline]
fn div_err_sign(a: f64, b: f64, q: f64) -> Option<f64> {
    if q.abs() < TINY || a.abs() < TINY || !q.is_finite() {
        return None;
    }
    let r = (-q).mul_add(b, a);
    Some(r * b.signum())
}

#[inline]
pub(crate) fn div_down(a: f64, b: f64) -> f64 {
    let q = a / b;
    if a == 0.0 {
        return 0.0;
    }
    match div_err_sign(a, b, q) {
        Some(e) if e >= 0.0 => q,
        Some(_) => q.next_down(),
        None if q.is_infinite() => {
            if q > 0.0 {
                f64::MAX
            } else {
                q
            }
        }
        None => q.next_down(),
    }
}

#[inline]
pub(crate) fn div_up(a: f64, b: f64) -> f64 {
    let q = a / b;
    if a == 0.0 {
        return 0.0;
    }
    match div_err_sign(a, b, q) {
        Some(e) if e <= 0.0 => q,
        Some(_) => q.next_up(),
        None if q.is_infinite() => {
            if q < 0.0 {
                f64::MIN
            } else {
                q
            }
        }
        None => q.next_up(),
    }
}

#[inline]
fn sqrt_down(x: f64) -> f64 {
    let s = x.sqrt();
    if s == 0.0 {
        return 0.0;
    }
    if x < TINY {
        return s.next_down().max(0.0);
    }
    if (-s).mul_add(s, x) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

#[inline]
fn sqrt_up(x: f64) -> f64 {
    let s = x.sqrt();
    if x == 0.0 {
        return 0.0;
    }
    if x < TINY {
        return s.next_up();
    }
    if (-s).mul_add(s, x) > 0.0 {
        s.next_up()
    } else {
        s
    }
}

#[inline]
fn widen2_down(x: f64) -> f64 {
    x.next_down().next_down()
}

#[inline]
fn widen2_up(x: f64) -> f64 {
    x.next_up().next_up()
}

/// Closed real interval `[lo, hi]` with finite binary64 endpoints.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self, IntervalError> {
        if lo.is_finite() && hi.is_finite() && lo <= hi {
            Ok(Interval { lo, hi })
        } else {
            Err(IntervalError::InvalidBounds(lo, hi))
        }
    }

    /// Degenerate interval; panics on non-finite input.
    pub fn point(x: f64) -> Self {
        assert!(x.is_finite(), "point interval from non-finite value {x}");
        Interval { lo: x, hi: x }
    }

    /// Tightest enclosure of an integer.
    pub fn exact(n: i64) -> Self {
        let x = n as f64;
        if x as i128 == n as i128 {
            Interval::point(x)
        } else {
            Interval {
                lo: x.next_down(),
                hi: x.next_up(),
            }
        }
    }

    /// Enclosure of the rational `p / q`.
    pub fn ratio(p: i64, q: i64) -> Result<Self, IntervalError> {
        Interval::exact(p).checked_div(Interval::exact(q))
    }

    /// `[mid - rad, mid + rad]`, outward rounded.
    pub fn mid_rad(mid: f64, rad: f64) -> Result<Self, IntervalError> {
        if !(rad >= 0.0) || !rad.is_finite() {
            return Err(IntervalError::Domain(format!("negative or invalid radius {rad}")));
        }
        Interval::new(sub_down(mid, rad), add_up(mid, rad))
    }

    /// Hull of two floats in either order.
    pub fn hull_of(a: f64, b: f64) -> Self {
        Interval::point(a.min(b)).hull(Interval::point(a.max(b)))
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn inf(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn sup(self) -> f64 {
        self.hi
    }

    /// Representable midpoint.
    pub fn mid(self) -> f64 {
        if self.lo == self.hi {
            return self.lo;
        }
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// Radius such that `[mid - rad, mid + rad]` contains `self`.
    pub fn rad(self) -> f64 {
        let m = self.mid();
        sub_up(m, self.lo).max(sub_up(self.hi, m))
    }

    pub fn width(self) -> f64 {
        sub_up(self.hi, self.lo)
    }

    /// Upper bound of `sup |x|`.
    pub fn mag(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Lower bound of `inf |x|`.
    pub fn mig(self) -> f64 {
        if self.contains_zero() {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    #[inline]
    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    #[inline]
    pub fn contains_zero(self) -> bool {
        self.lo <= 0.0 && 0.0 <= self.hi
    }

    pub fn is_subset(self, other: Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersects(self, other: Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(self, other: Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Strictly positive everywhere.
    pub fn is_positive(self) -> bool {
        self.lo > 0.0
    }

    pub fn is_negative(self) -> bool {
        self.hi < 0.0
    }

    /// `[x - r, x + r]` for every `x` in `self`.
    pub fn inflate(self, r: f64) -> Interval {
        debug_assert!(r >= 0.0);
        Interval {
            lo: sub_down(self.lo, r),
            hi: add_up(self.hi, r),
        }
    }

    pub fn checked_div(self, rhs: Interval) -> Result<Interval, IntervalError> {
        if rhs.contains_zero() {
            return Err(IntervalError::NotInvertible(rhs.to_string()));
        }
        let cands_lo = [
            div_down(self.lo, rhs.lo),
            div_down(self.lo, rhs.hi),
            div_down(self.hi, rhs.lo),
            div_down(self.hi, rhs.hi),
        ];
        let cands_hi = [
            div_up(self.lo, rhs.lo),
            div_up(self.lo, rhs.hi),
            div_up(self.hi, rhs.lo),
            div_up(self.hi, rhs.hi),
        ];
        Ok(Interval {
            lo: cands_lo.iter().copied().fold(f64::INFINITY, f64::min),
            hi: cands_hi.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        })
    }

    pub fn recip(self) -> Result<Interval, IntervalError> {
        Interval::ONE.checked_div(self)
    }

    pub fn sqr(self) -> Interval {
        let a = self.mig();
        let b = self.mag();
        Interval {
            lo: mul_down(a, a),
            hi: mul_up(b, b),
        }
    }

    /// Integer power by repeated squaring.
    pub fn powi(self, n: u32) -> Interval {
        if n == 0 {
            return Interval::ONE;
        }
        if self.lo >= 0.0 {
            // monotone on the positive axis
            let mut lo = 1.0;
            let mut hi = 1.0;
            let (mut bl, mut bh) = (self.lo, self.hi);
            let mut e = n;
            while e > 0 {
                if e & 1 == 1 {
                    lo = mul_down(lo, bl);
                    hi = mul_up(hi, bh);
                }
                bl = mul_down(bl, bl);
                bh = mul_up(bh, bh);
                e >>= 1;
            }
            return Interval { lo, hi };
        }
        let mut acc = Interval::ONE;
        let mut base = self;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base.sqr();
            e >>= 1;
        }
        acc
    }

    pub fn abs(self) -> Interval {
        Interval {
            lo: self.mig(),
            hi: self.mag(),
        }
    }

    pub fn max(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.max(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn min(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.min(other.hi),
        }
    }

    pub fn sqrt(self) -> Result<Interval, IntervalError> {
        if self.lo < 0.0 {
            return Err(IntervalError::Domain(format!("sqrt of {self}")));
        }
        Ok(Interval {
            lo: sqrt_down(self.lo),
            hi: sqrt_up(self.hi),
        })
    }

    pub fn exp(self) -> Interval {
        let lo = widen2_down(self.lo.exp()).max(0.0);
        let hi = self.hi.exp();
        let hi = if hi.is_finite() { widen2_up(hi) } else { f64::MAX };
        Interval { lo, hi }
    }

    pub fn ln(self) -> Result<Interval, IntervalError> {
        if self.lo <= 0.0 {
            return Err(IntervalError::Domain(format!("ln of {self}")));
        }
        Ok(Interval {
            lo: widen2_down(self.lo.ln()),
            hi: widen2_up(self.hi.ln()),
        })
    }

    pub fn pi() -> Interval {
        Interval {
            lo: std::f64::consts::PI,
            hi: std::f64::consts::PI.next_up(),
        }
    }

    pub fn e() -> Interval {
        Interval {
            lo: std::f64::consts::E,
            hi: std::f64::consts::E.next_up(),
        }
    }

    /// Enclosure of `cos` with interior extrema handled.
    pub fn cos(self) -> Interval {
        self.trig(0.0, f64::cos)
    }

    /// Enclosure of `sin` with interior extrema handled.
    pub fn sin(self) -> Interval {
        self.trig(0.5, f64::sin)
    }

    /// Shared kernel: the extrema sit at `(k + shift) * pi` with value
    /// `(-1)^k` for cos (shift 0) and `(-1)^k` for sin (shift 1/2).
    fn trig(self, shift: f64, f: fn(f64) -> f64) -> Interval {
        let two_pi = Interval::pi() * Interval::exact(2);
        if self.width() >= two_pi.lo() {
            return Interval { lo: -1.0, hi: 1.0 };
        }
        let a = f(self.lo);
        let b = f(self.hi);
        let mut lo = widen2_down(a.min(b));
        let mut hi = widen2_up(a.max(b));
        let pi = Interval::pi();
        let k_start = (self.lo / std::f64::consts::PI - shift).floor() as i64 - 1;
        let k_end = (self.hi / std::f64::consts::PI - shift).ceil() as i64 + 1;
        for k in k_start..=k_end {
            let km = Interval::point(k as f64 + shift);
            let x = km * pi;
            if x.intersects(self) {
                if k.rem_euclid(2) == 0 {
                    hi = 1.0;
                } else {
                    lo = -1.0;
                }
            }
        }
        Interval {
            lo: lo.max(-1.0),
            hi: hi.min(1.0),
        }
    }
}

impl Default for Interval {
    fn default() -> Self {
        Interval::ZERO
    }
}

impl Add for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, rhs: Interval) -> Interval {
        Interval {
            lo: add_down(self.lo, rhs.lo),
            hi: add_up(self.hi, rhs.hi),
        }
    }
}

impl Sub for Interval {
    type Output = Interval;
    #[inline]
    fn sub(self, rhs: Interval) -> Interval {
        Interval {
            lo: sub_down(self.lo, rhs.hi),
            hi: sub_up(self.hi, rhs.lo),
        }
    }
}

impl Neg for Interval {
    type Output = Interval;
    #[inline]
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    #[inline]
    fn mul(self, rhs: Interval) -> Interval {
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        if a >= 0.0 && c >= 0.0 {
            return Interval {
                lo: mul_down(a, c),
                hi: mul_up(b, d),
            };
        }
        let lo = mul_down(a, c)
            .min(mul_down(a, d))
            .min(mul_down(b, c))
            .min(mul_down(b, d));
        let hi = mul_up(a, c)
            .max(mul_up(a, d))
            .max(mul_up(b, c))
            .max(mul_up(b, d));
        Interval { lo, hi }
    }
}

impl AddAssign for Interval {
    fn add_assign(&mut self, rhs: Interval) {
        *self = *self + rhs;
    }
}

impl SubAssign for Interval {
    fn sub_assign(&mut self, rhs: Interval) {
        *self = *self - rhs;
    }
}

impl MulAssign for Interval {
    fn mul_assign(&mut self, rhs: Interval) {
        *self = *self * rhs;
    }
}

/// Six significant digits, lower bound rounded down and upper bound rounded up.
fn format_directed(x: f64, up: bool) -> String {
    if x == 0.0 {
        return "0.0".to_string();
    }
    let s = format!("{:.5e}", x);
    let (mant, exp) = s.split_once('e').expect("exponent form");
    let mut exp: i32 = exp.parse().expect("integer exponent");
    let neg = mant.starts_with('-');
    let mut digits: i64 = mant
        .chars()
        .filter(|c| c.is_ascii_digit())
        .collect::<String>()
        .parse()
        .expect("mantissa digits");
    let value = |d: i64, e: i32| -> f64 {
        let v: f64 = format!("{}{}e{}", if neg { "-" } else { "" }, d, e - 5)
            .parse()
            .expect("decimal");
        v
    };
    let v = value(digits, exp);
    if (up && v < x) || (!up && v > x) {
        // move one unit in the last digit away from the wrong side
        let outward = up != neg;
        if outward {
            digits += 1;
            if digits == 1_000_000 {
                digits = 100_000;
                exp += 1;
            }
        } else {
            digits -= 1;
            if digits == 99_999 {
                digits = 999_999;
                exp -= 1;
            }
        }
    }
    pretty_decimal(neg, digits, exp)
}

/// Six-digit mantissa and exponent to a short decimal string.
fn pretty_decimal(neg: bool, digits: i64, exp: i32) -> String {
    let digits = digits.to_string();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    let sign = if neg { "-" } else { "" };
    if (-5..6).contains(&exp) {
        let point = exp + 1;
        let body = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), digits)
        } else if (point as usize) >= digits.len() {
            format!("{}{}.0", digits, "0".repeat(point as usize - digits.len()))
        } else {
            format!("{}.{}", &digits[..point as usize], &digits[point as usize..])
        };
        format!("{sign}{body}")
    } else {
        let (first, rest) = digits.split_at(1);
        if rest.is_empty() {
            format!("{sign}{first}.0e{exp}")
        } else {
            format!("{sign}{first}.{rest}e{exp}")
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            format_directed(self.lo, false),
            format_directed(self.hi, true)
        )
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [lo, hi] = <[f64; 2]>::deserialize(d)?;
        Interval::new(lo, hi).map_err(serde::de::Error::custom)
    }
}

/// Rectangular complex interval `re + i im`.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub const ZERO: ComplexInterval = ComplexInterval {
        re: Interval::ZERO,
        im: Interval::ZERO,
    };
    pub const ONE: ComplexInterval = ComplexInterval {
        re: Interval::ONE,
        im: Interval::ZERO,
    };

    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn real(re: Interval) -> Self {
        ComplexInterval {
            re,
            im: Interval::ZERO,
        }
    }

    pub fn point(re: f64, im: f64) -> Self {
        ComplexInterval {
            re: Interval::point(re),
            im: Interval::point(im),
        }
    }

    pub fn i() -> Self {
        ComplexInterval::point(0.0, 1.0)
    }

    pub fn conj(self) -> Self {
        ComplexInterval {
            re: self.re,
            im: -self.im,
        }
    }

    /// Enclosure of `|z|^2`.
    pub fn norm_sqr(self) -> Interval {
        self.re.sqr() + self.im.sqr()
    }

    /// Enclosure of `|z|`.
    pub fn abs(self) -> Interval {
        if self.im == Interval::ZERO {
            return self.re.abs();
        }
        if self.re == Interval::ZERO {
            return self.im.abs();
        }
        self.norm_sqr()
            .sqrt()
            .expect("norm_sqr is nonnegative by construction")
    }

    /// Upper bound of `sup |z|`.
    pub fn mag(self) -> f64 {
        self.abs().hi()
    }

    pub fn mid(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.mid(), self.im.mid())
    }

    pub fn contains(self, z: num_complex::Complex64) -> bool {
        self.re.contains(z.re) && self.im.contains(z.im)
    }

    pub fn contains_zero(self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn intersects(self, other: ComplexInterval) -> bool {
        self.re.intersects(other.re) && self.im.intersects(other.im)
    }

    pub fn is_subset(self, other: ComplexInterval) -> bool {
        self.re.is_subset(other.re) && self.im.is_subset(other.im)
    }

    pub fn hull(self, other: ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re.hull(other.re),
            im: self.im.hull(other.im),
        }
    }

    /// Widen both components by `r`: contains the disk of radius `r` around every point.
    pub fn inflate(self, r: f64) -> ComplexInterval {
        ComplexInterval {
            re: self.re.inflate(r),
            im: self.im.inflate(r),
        }
    }

    pub fn scale(self, s: Interval) -> ComplexInterval {
        ComplexInterval {
            re: self.re * s,
            im: self.im * s,
        }
    }

    pub fn checked_div(self, rhs: ComplexInterval) -> Result<ComplexInterval, IntervalError> {
        if rhs.im == Interval::ZERO {
            return Ok(ComplexInterval {
                re: self.re.checked_div(rhs.re)?,
                im: if self.im == Interval::ZERO {
                    Interval::ZERO
                } else {
                    self.im.checked_div(rhs.re)?
                },
            });
        }
        let den = rhs.norm_sqr();
        if den.contains_zero() {
            return Err(IntervalError::NotInvertible(format!("{rhs}")));
        }
        let num = self * rhs.conj();
        Ok(ComplexInterval {
            re: num.re.checked_div(den)?,
            im: num.im.checked_div(den)?,
        })
    }

    pub fn recip(self) -> Result<ComplexInterval, IntervalError> {
        ComplexInterval::ONE.checked_div(self)
    }

    /// `exp(i alpha)`.
    pub fn cis(alpha: Interval) -> ComplexInterval {
        ComplexInterval {
            re: alpha.cos(),
            im: alpha.sin(),
        }
    }
}

/// `(e^{i alpha}, e^{-i alpha})`.
pub fn unit_circle(alpha: Interval) -> (ComplexInterval, ComplexInterval) {
    let z = ComplexInterval::cis(alpha);
    (z, z.conj())
}

pub fn cadd(a: ComplexInterval, b: ComplexInterval) -> ComplexInterval {
    a + b
}

pub fn cmul(a: ComplexInterval, b: ComplexInterval) -> ComplexInterval {
    a * b
}

pub fn cdiv(a: ComplexInterval, b: ComplexInterval) -> Result<ComplexInterval, IntervalError> {
    a.checked_div(b)
}

/// Box `[mid_i - rad, mid_i + rad]` per component.
pub fn midpoint_radius(mid: &[f64], rad: f64) -> Result<Vec<Interval>, IntervalError> {
    mid.iter().map(|&m| Interval::mid_rad(m, rad)).collect()
}

impl Add for ComplexInterval {
    type Output = ComplexInterval;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        ComplexInterval {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for ComplexInterval {
    type Output = ComplexInterval;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        ComplexInterval {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Neg for ComplexInterval {
    type Output = ComplexInterval;
    #[inline]
    fn neg(self) -> Self {
        ComplexInterval {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Mul for ComplexInterval {
    type Output = ComplexInterval;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        if self.im == Interval::ZERO && rhs.im == Interval::ZERO {
            return ComplexInterval::real(self.re * rhs.re);
        }
        ComplexInterval {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl AddAssign for ComplexInterval {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for ComplexInterval {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for ComplexInterval {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl fmt::Display for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}im", self.re, self.im)
    }
}

impl fmt::Debug for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + {:?}i", self.re, self.im)
    }
}

impl Serialize for ComplexInterval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.re.lo, self.re.hi, self.im.lo, self.im.hi].serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexInterval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b, c, e] = <[f64; 4]>::deserialize(d)?;
        Ok(ComplexInterval {
            re: Interval::new(a, b).map_err(serde::de::Error::custom)?,
            im: Interval::new(c, e).map_err(serde::de::Error::custom)?,
        })
    }
}
