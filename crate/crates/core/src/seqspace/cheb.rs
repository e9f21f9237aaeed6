//! Chebyshev sequences under the convention `u(s) = u0 + 2 Σ_{k≥1} u_k T_k(s)`.

use crate::interval::{Interval, IntervalError};
use crate::scalar::{Algebra, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct ChebSeq<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> ChebSeq<S> {
    pub fn zeros(order: usize) -> Self {
        ChebSeq {
            coeffs: vec![S::zero(); order + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a Chebyshev sequence has at least u0");
        ChebSeq { coeffs }
    }

    pub fn constant(c: S) -> Self {
        ChebSeq { coeffs: vec![c] }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    #[inline]
    pub fn get(&self, k: usize) -> S {
        self.coeffs.get(k).copied().unwrap_or_else(S::zero)
    }

    pub fn set(&mut self, k: usize, v: S) {
        self.coeffs[k] = v;
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [S] {
        &mut self.coeffs
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(S) -> T) -> ChebSeq<T> {
        ChebSeq {
            coeffs: self.coeffs.iter().map(|&c| f(c)).collect(),
        }
    }

    pub fn resize(&self, order: usize) -> Self {
        ChebSeq {
            coeffs: (0..=order).map(|k| self.get(k)).collect(),
        }
    }

    pub fn coeff_eq(&self, other: &Self) -> bool {
        let n = self.order().max(other.order());
        (0..=n).all(|k| self.get(k) == other.get(k))
    }

    pub fn project(&self, k: usize) -> Self {
        self.resize(self.order().min(k))
    }

    pub fn tail(&self, k: usize) -> Self {
        ChebSeq {
            coeffs: (0..=self.order())
                .map(|i| if i > k { self.get(i) } else { S::zero() })
                .collect(),
        }
    }

    /// `|u0| + 2 Σ |u_k| μ^k`, rounded up.
    pub fn norm(&self, mu: Interval) -> Interval {
        let two = Interval::exact(2);
        let mut acc = Interval::ZERO;
        let mut p = Interval::ONE;
        for (k, c) in self.coeffs.iter().enumerate() {
            let a = c.abs_enclosure();
            if k == 0 {
                acc += a;
            } else {
                p *= mu;
                acc += two * a * p;
            }
        }
        acc
    }

    /// `(u*w)_k = Σ_{l∈Z} u_{|k−l|} w_{|l|}`; orders add.
    pub fn convolve(&self, w: &Self) -> Self {
        let (ku, kw) = (self.order() as isize, w.order() as isize);
        let n = ku + kw;
        let mut out = vec![S::zero(); (n + 1) as usize];
        for (k, o) in out.iter_mut().enumerate() {
            let k = k as isize;
            let lo = (k - ku).max(-kw);
            let hi = (k + ku).min(kw);
            let mut acc = S::zero();
            for l in lo..=hi {
                acc += self.coeffs[(k - l).unsigned_abs()] * w.coeffs[l.unsigned_abs()];
            }
            *o = acc;
        }
        ChebSeq { coeffs: out }
    }

    /// `u(1) = u0 + 2 Σ u_k`.
    pub fn eval_at_one(&self) -> S {
        let two = S::from_i64(2);
        let mut acc = S::zero();
        for &c in self.coeffs[1..].iter() {
            acc += c;
        }
        self.coeffs[0] + two * acc
    }

    /// Clenshaw recurrence, no domain check.
    pub fn eval_unchecked(&self, s: S) -> S {
        let two = S::from_i64(2);
        let two_s = two * s;
        let mut b1 = S::zero();
        let mut b2 = S::zero();
        for k in (1..=self.order()).rev() {
            let b0 = two * self.coeffs[k] + two_s * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        self.coeffs[0] + s * b1 - b2
    }

    /// Antiderivative `s ↦ ∫_{−1}^s u`; order grows by one.
    pub fn apply_lc(&self) -> Self {
        let n = self.order();
        let mut out = vec![S::zero(); n + 2];
        let mut row0 = self.get(0) - self.get(1) * S::from_ratio(1, 2);
        for l in 2..=n {
            let sign = if l % 2 == 1 { 2 } else { -2 };
            row0 += self.coeffs[l] * S::from_ratio(sign, (l * l - 1) as i64);
        }
        out[0] = row0;
        for (k, o) in out.iter_mut().enumerate().skip(1) {
            *o = (self.get(k - 1) - self.get(k + 1)) * S::from_ratio(1, 2 * k as i64);
        }
        ChebSeq { coeffs: out }
    }

    /// Derivative `du/ds`; order drops by one.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return ChebSeq::zeros(0);
        }
        // work with a_k = 2 u_k: a'_{k-1} = a'_{k+1} + 2k a_k
        let mut d = vec![S::zero(); n + 2];
        let two = S::from_i64(2);
        for k in (1..=n).rev() {
            d[k - 1] = d[k + 1] + S::from_i64(2 * k as i64) * two * self.coeffs[k];
        }
        let half = S::from_ratio(1, 2);
        ChebSeq {
            coeffs: d[..n].iter().map(|&a| a * half).collect(),
        }
    }

    pub fn add_seq(&self, w: &Self) -> Self {
        let n = self.order().max(w.order());
        ChebSeq {
            coeffs: (0..=n).map(|k| self.get(k) + w.get(k)).collect(),
        }
    }

    pub fn sub_seq(&self, w: &Self) -> Self {
        let n = self.order().max(w.order());
        ChebSeq {
            coeffs: (0..=n).map(|k| self.get(k) - w.get(k)).collect(),
        }
    }

    pub fn scale_by(&self, s: S) -> Self {
        self.map(|c| c * s)
    }
}

impl ChebSeq<Interval> {
    /// Enclosure of `u(s)` for `s ⊆ [−1, 1]`.
    ///
    /// Float Clenshaw at the midpoint of `s`, widened by a rounding-error bound,
    /// the coefficient radii and a Markov bound on `u'` over `s`. Interval
    /// Clenshaw itself widens like `(1 + √2)^K` near `s = ±1`.
    pub fn eval(&self, s: Interval) -> Result<Interval, IntervalError> {
        if s.lo() < -1.0 || s.hi() > 1.0 {
            return Err(IntervalError::Domain(format!(
                "Chebyshev evaluation point {s} outside [-1, 1]"
            )));
        }
        let m = s.mid().clamp(-1.0, 1.0);
        let n = self.order();
        let mid: Vec<f64> = self.coeffs.iter().map(|c| c.mid()).collect();
        let mut b = vec![0.0f64; n + 3];
        for k in (1..=n).rev() {
            b[k] = 2.0 * mid[k] + 2.0 * m * b[k + 1] - b[k + 2];
        }
        let v = mid[0] + m * b[1] - b[2];
        // local error of step k ≤ γ3 (|2c_k| + |2m b_{k+1}| + |b_{k+2}|),
        // reaching the result multiplied by T_k(m)
        let ma = Interval::point(m.abs());
        let two = Interval::exact(2);
        let tiny = Interval::point(f64::MIN_POSITIVE);
        let local = |c: f64, b1: f64, b2: f64| {
            Interval::point(c.abs()) * two + two * ma * Interval::point(b1.abs()) + Interval::point(b2.abs()) + tiny
        };
        let gamma = Interval::point(3.0 * f64::EPSILON);
        let mut err = gamma * (Interval::point(mid[0].abs()) + ma * Interval::point(b[1].abs()) + Interval::point(b[2].abs()) + tiny);
        let mut deriv = Interval::ZERO;
        for k in 1..=n {
            err += gamma * local(mid[k], b[k + 1], b[k + 2]);
            deriv += two * self.coeffs[k].abs() * Interval::exact((k * k) as i64);
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            let r = (*c - Interval::point(mid[k])).abs();
            err += if k == 0 { r } else { two * r };
        }
        err += deriv * (s - Interval::point(m)).abs();
        Ok(Interval::point(v).inflate(err.hi()))
    }
}

impl ChebSeq<f64> {
    pub fn eval_f64(&self, s: f64) -> f64 {
        self.eval_unchecked(s)
    }
}

impl<S: Scalar> Algebra for ChebSeq<S> {
    type S = S;
    fn add(&self, rhs: &Self) -> Self {
        self.add_seq(rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.sub_seq(rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.convolve(rhs)
    }
    fn neg(&self) -> Self {
        self.map(|c| -c)
    }
    fn scale(&self, s: S) -> Self {
        self.scale_by(s)
    }
    fn constant_like(&self, s: S) -> Self {
        ChebSeq::constant(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(x: f64) -> Interval {
        Interval::point(x)
    }

    fn seq(c: &[f64]) -> ChebSeq<Interval> {
        ChebSeq::from_coeffs(c.iter().map(|&x| iv(x)).collect())
    }

    #[test]
    fn norms() {
        assert!(seq(&[1.0]).norm(Interval::ONE).contains(1.0));
        assert!(seq(&[0.0, 0.5]).norm(Interval::ONE).contains(1.0));
        assert!(seq(&[0.0, 0.0, 0.0, 1.0]).norm(Interval::exact(2)).contains(16.0));
    }

    #[test]
    fn convolution_identity_and_square() {
        let u = seq(&[0.3, -0.2, 0.1]);
        let one = seq(&[1.0]);
        assert!(one.convolve(&u).coeff_eq(&u));
        let t1 = seq(&[0.0, 0.5]);
        let sq = t1.convolve(&t1);
        assert_eq!(sq.get(0), iv(0.5));
        assert_eq!(sq.get(1), Interval::ZERO);
        assert_eq!(sq.get(2), iv(0.25));
    }

    #[test]
    fn evaluation() {
        let t1 = seq(&[0.0, 0.5]);
        assert!(t1.eval(iv(0.5)).unwrap().contains(0.5));
        let t2 = seq(&[0.0, 0.0, 0.5]);
        assert!(t2.eval(Interval::ZERO).unwrap().contains(-1.0));
        let t3 = seq(&[0.0, 0.0, 0.0, 0.5]);
        assert!(t3.eval_at_one().contains(1.0));
        assert!(seq(&[1.0]).eval_at_one().contains(1.0));
        assert!(t1.eval(iv(1.5)).is_err());
    }

    #[test]
    fn antiderivative() {
        let v = seq(&[1.0]).apply_lc();
        assert_eq!(v.get(0), Interval::ONE);
        assert!(v.get(1).contains(0.5));
        let w = seq(&[0.0, 0.5]).apply_lc();
        assert!(w.get(0).contains(-0.25));
        assert!(w.get(1).contains(0.0));
        assert!(w.get(2).contains(0.125));
        assert_eq!(w.order(), 2);
    }

    #[test]
    fn high_order_evaluation_stays_tight() {
        let u = ChebSeq::from_coeffs((0..=120).map(|k| iv(0.9f64.powi(k))).collect());
        for s in [-1.0, -0.3, 1.0] {
            let v = u.eval(iv(s)).unwrap();
            assert!(v.width() < 1e-12 * v.mag(), "{v} at {s}");
            assert!((v.mid() - u.map(|c| c.mid()).eval_f64(s)).abs() < 1e-12);
        }
        assert!(u.eval(iv(1.0)).unwrap().intersects(u.eval_at_one()));
    }

    #[test]
    fn derivative_inverts_antiderivative() {
        let u = seq(&[0.25, 0.5, -0.125, 0.0625]);
        let back = u.apply_lc().derivative();
        for k in 0..=u.order() {
            assert!(back.get(k).contains(u.get(k).mid()), "k = {k}");
        }
    }

    #[test]
    fn projections() {
        let u = seq(&[1.0, 2.0, 3.0]);
        assert!(u.project(1).add_seq(&u.tail(1)).coeff_eq(&u));
        assert!(u.project(1).tail(1).coeff_eq(&ChebSeq::zeros(0)));
    }
}
