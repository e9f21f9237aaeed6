//! The Shimizu–Morioka vector field `f(x, y, z) = (y, x − a y − x z, −b z + x²)`.

use crate::interval::Interval;
use crate::scalar::{Algebra, Scalar};

/// System parameters over a scalar type.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params<S> {
    pub a: S,
    pub b: S,
}

impl<S: Scalar> Params<S> {
    /// `a = 3/4`, `b = 9/20`, as exact-rational enclosures for interval types.
    pub fn standard() -> Self {
        Params {
            a: S::from_ratio(3, 4),
            b: S::from_ratio(9, 20),
        }
    }

    pub fn lift<T: Scalar>(&self, f: impl Fn(S) -> T) -> Params<T> {
        Params {
            a: f(self.a),
            b: f(self.b),
        }
    }
}

impl Params<Interval> {
    /// Float mirrors for the Newton path.
    pub fn mid(&self) -> Params<f64> {
        Params {
            a: self.a.mid(),
            b: self.b.mid(),
        }
    }
}

/// Vector field over any algebra (scalars or coefficient sequences).
pub fn f<T: Algebra>(u: &[T; 3], p: &Params<T::S>) -> [T; 3] {
    let [x, y, z] = u;
    let f1 = y.clone();
    let f2 = x.sub(&y.scale(p.a)).sub(&x.mul(z));
    let f3 = z.scale(-p.b).add(&x.mul(x));
    [f1, f2, f3]
}

/// Jacobian `[[0, 1, 0], [1 − z, −a, −x], [2x, 0, −b]]` over the algebra.
///
/// For sequence algebras the entries are the multiplier sequences of the
/// corresponding multiplication operators.
pub fn df<T: Algebra>(u: &[T; 3], p: &Params<T::S>) -> [[T; 3]; 3] {
    let [x, _y, z] = u;
    let c = |s: T::S| x.constant_like(s);
    let zero = <T::S as Scalar>::zero();
    let one = <T::S as Scalar>::one();
    let two = <T::S as Scalar>::from_i64(2);
    [
        [c(zero), c(one), c(zero)],
        [z.neg().add(&c(one)), c(-p.a), x.neg()],
        [x.scale(two), c(zero), c(-p.b)],
    ]
}

/// Multiplier sequences of `Df(P)`, ready for DF assembly downstream.
pub fn df_vecfield_seq<T: Algebra>(u: &[T; 3], p: &Params<T::S>) -> [[T; 3]; 3] {
    df(u, p)
}
