//! Coordinate weights and induced operator norms between weighted ℓ¹ spaces.

use super::mat::Mat;
use crate::interval::{add_down, add_up, div_down, div_up, mul_down, mul_up, Interval};
use crate::scalar::Scalar;
use crate::seqspace::powers;

/// Positive weight per coordinate of a flattened product space.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightProfile {
    w: Vec<Interval>,
}

impl WeightProfile {
    pub fn new(w: Vec<Interval>) -> Self {
        assert!(w.iter().all(|x| x.lo() > 0.0), "weights must be positive");
        WeightProfile { w }
    }

    pub fn ones(n: usize) -> Self {
        WeightProfile {
            w: vec![Interval::ONE; n],
        }
    }

    /// `ν^(k1+k2)` over `[0..=k]²`, `k1` major.
    pub fn taylor(k: usize, nu: Interval) -> Self {
        let p = powers(nu, 2 * k);
        let mut w = Vec::with_capacity((k + 1) * (k + 1));
        for i in 0..=k {
            for j in 0..=k {
                w.push(p[i + j]);
            }
        }
        WeightProfile { w }
    }

    /// `1` at `k = 0`, `2 μ^k` otherwise.
    pub fn cheb(k: usize, mu: Interval) -> Self {
        let two = Interval::exact(2);
        let p = powers(mu, k);
        WeightProfile {
            w: (0..=k)
                .map(|i| if i == 0 { Interval::ONE } else { two * p[i] })
                .collect(),
        }
    }

    pub fn concat(parts: &[WeightProfile]) -> Self {
        WeightProfile {
            w: parts.iter().flat_map(|p| p.w.iter().copied()).collect(),
        }
    }

    pub fn repeat(&self, n: usize) -> Self {
        WeightProfile::concat(&vec![self.clone(); n])
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> Interval {
        self.w[i]
    }

    pub fn as_slice(&self) -> &[Interval] {
        &self.w
    }
}

/// Column sums `Σ_k |M_kl| w_out(k)` as `(lower, upper)` bounds.
pub fn weighted_column_sums<S: Scalar>(m: &Mat<S>, w_out: &WeightProfile) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(m.rows(), w_out.len(), "output weights length");
    let mut lo = vec![0.0f64; m.cols()];
    let mut hi = vec![0.0f64; m.cols()];
    for i in 0..m.rows() {
        let w = w_out.get(i);
        for (j, v) in m.row(i).iter().enumerate() {
            if *v == S::zero() {
                continue;
            }
            let a = v.abs_enclosure();
            hi[j] = add_up(hi[j], mul_up(a.hi(), w.hi()));
            lo[j] = add_down(lo[j], mul_down(a.lo(), w.lo()));
        }
    }
    (lo, hi)
}

/// Induced norm `sup_l (Σ_k |M_kl| w_out(k)) / w_in(l)`.
pub fn weighted_opnorm<S: Scalar>(
    m: &Mat<S>,
    w_out: &WeightProfile,
    w_in: &WeightProfile,
) -> Interval {
    let (lo, hi) = weighted_column_sums(m, w_out);
    sup_over_columns(&lo, &hi, w_in)
}

/// Divide column sums by the input weights and take the supremum.
pub fn sup_over_columns(lo: &[f64], hi: &[f64], w_in: &WeightProfile) -> Interval {
    assert_eq!(lo.len(), w_in.len(), "input weights length");
    let mut best_lo = 0.0f64;
    let mut best_hi = 0.0f64;
    for j in 0..lo.len() {
        let w = w_in.get(j);
        best_hi = best_hi.max(div_up(hi[j], w.lo()));
        best_lo = best_lo.max(div_down(lo[j], w.hi()));
    }
    Interval::new(best_lo.min(best_hi), best_hi).expect("finite norm")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_norms() {
        let i = Mat::<Interval>::identity(4);
        let w = WeightProfile::ones(4);
        assert!(weighted_opnorm(&i, &w, &w).contains(1.0));
        let ones = Mat::filled(3, 3, Interval::ONE);
        let w3 = WeightProfile::ones(3);
        assert!(weighted_opnorm(&ones, &w3, &w3).contains(3.0));
        let d = Mat::from_fn(3, 3, |i, j| {
            if i == j {
                Interval::point([0.5, -2.0, 1.5][i])
            } else {
                Interval::ZERO
            }
        });
        let wc = WeightProfile::cheb(2, Interval::point(1.3));
        assert!(weighted_opnorm(&d, &wc, &wc).contains(2.0));
    }

    #[test]
    fn profiles() {
        let t = WeightProfile::taylor(1, Interval::exact(2));
        assert_eq!(t.len(), 4);
        assert!(t.get(3).contains(4.0));
        let c = WeightProfile::cheb(2, Interval::exact(3));
        assert!(c.get(2).contains(18.0));
        assert_eq!(c.repeat(3).len(), 9);
    }
}
