//! Tail-extended operators `A = A_K Π_{≤K} + Π_{>K}` on product sequence spaces.
//!
//! Finite blocks use the canonical flattening `[u1 | u2 | u3 | scalar slots]`,
//! each Taylor block in `k1`-major order over `max(k1, k2) ≤ K`, each Chebyshev
//! block in increasing order `0..=K`.

use super::mat::Mat;
use super::weights::WeightProfile;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::scalar::Scalar;
use crate::seqspace::{ChebSeq, Taylor2Seq, VecSeq3};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    Taylor3 { k: usize },
    Cheb3Scalars { k: usize, scalars: usize },
}

impl Layout {
    pub fn dim(&self) -> usize {
        match *self {
            Layout::Taylor3 { k } => 3 * (k + 1) * (k + 1),
            Layout::Cheb3Scalars { k, scalars } => 3 * (k + 1) + scalars,
        }
    }

    /// Weights of the truncated coordinates (`nu_or_mu` is ν or μ).
    pub fn weights(&self, nu_or_mu: Interval) -> WeightProfile {
        match *self {
            Layout::Taylor3 { k } => WeightProfile::taylor(k, nu_or_mu).repeat(3),
            Layout::Cheb3Scalars { k, scalars } => WeightProfile::concat(&[
                WeightProfile::cheb(k, nu_or_mu).repeat(3),
                WeightProfile::ones(scalars),
            ]),
        }
    }
}

/// Truncated coordinates of a Taylor triple, canonical order.
pub fn flatten_taylor3<S: Scalar>(u: &VecSeq3<Taylor2Seq<S>>, k: usize) -> Vec<S> {
    let mut out = Vec::with_capacity(3 * (k + 1) * (k + 1));
    for c in u {
        for i in 0..=k {
            for j in 0..=k {
                out.push(c.get(i, j));
            }
        }
    }
    out
}

pub fn unflatten_taylor3<S: Scalar>(x: &[S], k: usize) -> VecSeq3<Taylor2Seq<S>> {
    let n = (k + 1) * (k + 1);
    assert_eq!(x.len(), 3 * n);
    std::array::from_fn(|c| Taylor2Seq::from_coeffs(k, k, x[c * n..(c + 1) * n].to_vec()))
}

pub fn flatten_cheb3<S: Scalar>(u: &VecSeq3<ChebSeq<S>>, scalars: &[S], k: usize) -> Vec<S> {
    let mut out = Vec::with_capacity(3 * (k + 1) + scalars.len());
    for c in u {
        for i in 0..=k {
            out.push(c.get(i));
        }
    }
    out.extend_from_slice(scalars);
    out
}

pub fn unflatten_cheb3<S: Scalar>(x: &[S], k: usize) -> (VecSeq3<ChebSeq<S>>, Vec<S>) {
    let n = k + 1;
    let u = std::array::from_fn(|c| ChebSeq::from_coeffs(x[c * n..(c + 1) * n].to_vec()));
    (u, x[3 * n..].to_vec())
}

#[derive(Clone, Debug)]
pub struct SeqOperator<T> {
    pub finite: Mat<T>,
    pub tail_identity: bool,
    pub layout: Layout,
}

/// `A_finite` on the truncated coordinates, identity beyond.
pub fn make_tail_extended<T: Scalar>(a_finite: Mat<T>, layout: Layout) -> Result<SeqOperator<T>> {
    let n = layout.dim();
    if a_finite.rows() != n || a_finite.cols() != n {
        return Err(Error::Dimension(format!(
            "finite block {}x{} does not match layout dimension {n}",
            a_finite.rows(),
            a_finite.cols()
        )));
    }
    Ok(SeqOperator {
        finite: a_finite,
        tail_identity: true,
        layout,
    })
}

impl<T: Scalar> SeqOperator<T> {
    fn finite_apply<S: Scalar>(&self, x: &[S], lift: &impl Fn(T) -> S) -> Vec<S> {
        (0..self.finite.rows())
            .map(|i| {
                let mut acc = S::zero();
                for (a, &v) in self.finite.row(i).iter().zip(x) {
                    if *a != T::zero() {
                        acc += lift(*a) * v;
                    }
                }
                acc
            })
            .collect()
    }

    /// `A u` for a Taylor triple of any order; entries of `A` enter through `lift`.
    pub fn apply_taylor3<S: Scalar>(
        &self,
        u: &VecSeq3<Taylor2Seq<S>>,
        lift: impl Fn(T) -> S,
    ) -> Result<VecSeq3<Taylor2Seq<S>>> {
        let Layout::Taylor3 { k } = self.layout else {
            return Err(Error::Dimension("operator is not on a Taylor triple".into()));
        };
        let y = self.finite_apply(&flatten_taylor3(u, k), &lift);
        let head = unflatten_taylor3(&y, k);
        Ok(std::array::from_fn(|c| {
            let (k1, k2) = u[c].orders();
            let (n1, n2) = (k1.max(k), k2.max(k));
            Taylor2Seq::from_fn(n1, n2, |i, j| {
                if i.max(j) <= k {
                    head[c].get(i, j)
                } else if self.tail_identity {
                    u[c].get(i, j)
                } else {
                    S::zero()
                }
            })
        }))
    }

    /// `A (u, scalars)` for a Chebyshev triple of any order plus scalar slots.
    pub fn apply_cheb3<S: Scalar>(
        &self,
        u: &VecSeq3<ChebSeq<S>>,
        scalars: &[S],
        lift: impl Fn(T) -> S,
    ) -> Result<(VecSeq3<ChebSeq<S>>, Vec<S>)> {
        let Layout::Cheb3Scalars { k, scalars: ns } = self.layout else {
            return Err(Error::Dimension("operator is not on a Chebyshev triple".into()));
        };
        if scalars.len() != ns {
            return Err(Error::Dimension(format!("{} scalar slots, expected {ns}", scalars.len())));
        }
        let y = self.finite_apply(&flatten_cheb3(u, scalars, k), &lift);
        let (head, s) = unflatten_cheb3(&y, k);
        let out = std::array::from_fn(|c| {
            let n = u[c].order().max(k);
            ChebSeq::from_coeffs(
                (0..=n)
                    .map(|i| {
                        if i <= k {
                            head[c].get(i)
                        } else if self.tail_identity {
                            u[c].get(i)
                        } else {
                            S::zero()
                        }
                    })
                    .collect(),
            )
        });
        Ok((out, s))
    }
}

/// `Σ ‖u_i‖ + Σ |s_j|`.
pub fn product_space_norm<S: Scalar>(u: &VecSeq3<ChebSeq<S>>, scalars: &[S], mu: Interval) -> Interval {
    let mut acc = crate::seqspace::norm3_cheb(u, mu);
    for s in scalars {
        acc += s.abs_enclosure();
    }
    acc
}
