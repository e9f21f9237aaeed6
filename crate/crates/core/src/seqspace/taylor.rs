//! Bivariate Taylor coefficient sequences `u(θ) = Σ u_(k1,k2) θ1^k1 θ2^k2`.

use crate::interval::{Interval, IntervalError};
use crate::scalar::{Algebra, Scalar};

/// Dense coefficients on `[0..=k1] × [0..=k2]`, row-major with `k1` major.
#[derive(Clone, Debug, PartialEq)]
pub struct Taylor2Seq<S> {
    k1: usize,
    k2: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> Taylor2Seq<S> {
    pub fn zeros(k1: usize, k2: usize) -> Self {
        Taylor2Seq {
            k1,
            k2,
            coeffs: vec![S::zero(); (k1 + 1) * (k2 + 1)],
        }
    }

    pub fn from_fn(k1: usize, k2: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut coeffs = Vec::with_capacity((k1 + 1) * (k2 + 1));
        for i in 0..=k1 {
            for j in 0..=k2 {
                coeffs.push(f(i, j));
            }
        }
        Taylor2Seq { k1, k2, coeffs }
    }

    pub fn from_coeffs(k1: usize, k2: usize, coeffs: Vec<S>) -> Self {
        assert_eq!(coeffs.len(), (k1 + 1) * (k2 + 1), "coefficient count");
        Taylor2Seq { k1, k2, coeffs }
    }

    pub fn constant(c: S, k1: usize, k2: usize) -> Self {
        let mut u = Self::zeros(k1, k2);
        u.coeffs[0] = c;
        u
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.k1, self.k2)
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.k2 + 1) + j
    }

    /// Coefficient `(i, j)`; zero outside the stored range.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> S {
        if i <= self.k1 && j <= self.k2 {
            self.coeffs[self.idx(i, j)]
        } else {
            S::zero()
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        let k = self.idx(i, j);
        self.coeffs[k] = v;
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [S] {
        &mut self.coeffs
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(S) -> T) -> Taylor2Seq<T> {
        Taylor2Seq {
            k1: self.k1,
            k2: self.k2,
            coeffs: self.coeffs.iter().map(|&c| f(c)).collect(),
        }
    }

    /// Copy into a `k1 × k2` shape, dropping or zero-padding.
    pub fn resize(&self, k1: usize, k2: usize) -> Self {
        Self::from_fn(k1, k2, |i, j| self.get(i, j))
    }

    /// Coefficientwise equality with implicit zeros beyond the stored range.
    pub fn coeff_eq(&self, other: &Self) -> bool {
        let k1 = self.k1.max(other.k1);
        let k2 = self.k2.max(other.k2);
        (0..=k1).all(|i| (0..=k2).all(|j| self.get(i, j) == other.get(i, j)))
    }

    /// Keep `max(k1, k2) <= k`.
    pub fn project(&self, k: usize) -> Self {
        self.resize(self.k1.min(k), self.k2.min(k))
    }

    /// Keep `max(k1, k2) > k`.
    pub fn tail(&self, k: usize) -> Self {
        Self::from_fn(self.k1, self.k2, |i, j| {
            if i.max(j) > k {
                self.get(i, j)
            } else {
                S::zero()
            }
        })
    }

    /// `Σ |u_k| ν^(k1+k2)`, rounded up.
    pub fn norm(&self, nu: Interval) -> Interval {
        let pows = powers(nu, self.k1 + self.k2);
        let mut acc = Interval::ZERO;
        for i in 0..=self.k1 {
            for j in 0..=self.k2 {
                acc += self.get(i, j).abs_enclosure() * pows[i + j];
            }
        }
        acc
    }

    /// Cauchy product; orders add.
    pub fn cauchy(&self, w: &Self) -> Self {
        let (n1, n2) = (self.k1 + w.k1, self.k2 + w.k2);
        let mut out = Self::zeros(n1, n2);
        let stride = n2 + 1;
        for a1 in 0..=self.k1 {
            for a2 in 0..=self.k2 {
                let ua = self.coeffs[self.idx(a1, a2)];
                if ua == S::zero() {
                    continue;
                }
                for b1 in 0..=w.k1 {
                    let row = (a1 + b1) * stride + a2;
                    let wrow = b1 * (w.k2 + 1);
                    for b2 in 0..=w.k2 {
                        out.coeffs[row + b2] += ua * w.coeffs[wrow + b2];
                    }
                }
            }
        }
        out
    }

    /// Horner evaluation at `(θ1, θ2)`.
    pub fn eval(&self, t1: S, t2: S) -> S {
        let mut acc = S::zero();
        for i in (0..=self.k1).rev() {
            let mut row = S::zero();
            for j in (0..=self.k2).rev() {
                row = row * t2 + self.get(i, j);
            }
            acc = acc * t1 + row;
        }
        acc
    }

    /// Partial derivative in `θ1` (`j = 1`) or `θ2` (`j = 2`).
    pub fn partial(&self, var: usize) -> Self {
        match var {
            1 => Self::from_fn(self.k1.saturating_sub(1), self.k2, |i, j| {
                self.get(i + 1, j) * S::from_i64(i as i64 + 1)
            }),
            2 => Self::from_fn(self.k1, self.k2.saturating_sub(1), |i, j| {
                self.get(i, j + 1) * S::from_i64(j as i64 + 1)
            }),
            _ => panic!("partial derivative index must be 1 or 2, got {var}"),
        }
    }

    /// Scale coefficient `k` by `1/(k1 λ1 + k2 λ2)` when `k1 + k2 >= 2`, zero otherwise.
    pub fn apply_lt(&self, l1: S, l2: S) -> Result<Self, IntervalError> {
        let mut out = Self::zeros(self.k1, self.k2);
        for i in 0..=self.k1 {
            for j in 0..=self.k2 {
                if i + j < 2 {
                    continue;
                }
                let d = lt_divisor(i, j, l1, l2);
                let v = self.get(i, j).try_div(d).map_err(|_| {
                    IntervalError::NotInvertible(
                        "resonant or near-resonant eigenvalues".to_string(),
                    )
                })?;
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    pub fn add_seq(&self, w: &Self) -> Self {
        let (n1, n2) = (self.k1.max(w.k1), self.k2.max(w.k2));
        if (n1, n2) == (self.k1, self.k2) && (n1, n2) == (w.k1, w.k2) {
            return Taylor2Seq {
                k1: n1,
                k2: n2,
                coeffs: self
                    .coeffs
                    .iter()
                    .zip(&w.coeffs)
                    .map(|(&a, &b)| a + b)
                    .collect(),
            };
        }
        Self::from_fn(n1, n2, |i, j| self.get(i, j) + w.get(i, j))
    }

    pub fn sub_seq(&self, w: &Self) -> Self {
        self.add_seq(&w.neg_seq())
    }

    pub fn neg_seq(&self) -> Self {
        self.map(|c| -c)
    }

    pub fn scale_by(&self, s: S) -> Self {
        self.map(|c| c * s)
    }
}

/// `k1 λ1 + k2 λ2`.
#[inline]
pub fn lt_divisor<S: Scalar>(k1: usize, k2: usize, l1: S, l2: S) -> S {
    S::from_i64(k1 as i64) * l1 + S::from_i64(k2 as i64) * l2
}

/// `[1, ν, ν², …, ν^n]` as interval enclosures.
pub fn powers(nu: Interval, n: usize) -> Vec<Interval> {
    let mut out = Vec::with_capacity(n + 1);
    let mut p = Interval::ONE;
    for _ in 0..=n {
        out.push(p);
        p *= nu;
    }
    out
}

impl<S: Scalar> Algebra for Taylor2Seq<S> {
    type S = S;
    fn add(&self, rhs: &Self) -> Self {
        self.add_seq(rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.sub_seq(rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.cauchy(rhs)
    }
    fn neg(&self) -> Self {
        self.neg_seq()
    }
    fn scale(&self, s: S) -> Self {
        self.scale_by(s)
    }
    fn constant_like(&self, s: S) -> Self {
        Self::constant(s, 0, 0)
    }
}
