//! `Y` and `Z` for the boundary-value problem.

use serde::{Deserialize, Serialize};

use super::bvp::{e_entry, lc_mult_column, stable_rigorous, unstable_rigorous, HetProblem};
use crate::error::{Error, Result};
use crate::interval::{add_down, add_up, Interval};
use crate::linop::{
    mul_float_interval, sup_over_columns, unflatten_cheb3, weighted_column_sums, weighted_opnorm, Mat,
    WeightProfile,
};
use crate::model;
use crate::scalar::Scalar;
use crate::seqspace::{powers, ChebSeq, VecSeq3};

/// `‖L_C‖ = 1 + μ`.
pub fn lc_norm(mu: Interval) -> Interval {
    Interval::ONE + mu
}

/// `‖Π_{≤0} L_C Π_{>K+1}‖ = μ^{−(K+2)} / ((K+2)² − 1)`.
pub fn lc_row0_tail(k: usize, mu: Interval) -> Result<Interval> {
    let n = k as i64 + 2;
    let p = mu.powi(n as u32);
    Ok(Interval::ONE.checked_div(p * Interval::exact(n * n - 1))?)
}

/// `‖Π_{>K} L_C Π_{>K+1}‖ = μ^{−1}/(2(K+1)) + μ/(2(K+3))`.
pub fn lc_tail(k: usize, mu: Interval) -> Result<Interval> {
    let k = k as i64;
    let a = Interval::ONE.checked_div(mu * Interval::exact(2 * (k + 1)))?;
    let b = mu.checked_div(Interval::exact(2 * (k + 3)))?;
    Ok(a + b)
}

/// `‖ℰ Π_{>K}‖ = μ^{−(K+1)}`.
pub fn e_tail(k: usize, mu: Interval) -> Result<Interval> {
    Ok(Interval::ONE.checked_div(mu.powi(k as u32 + 1))?)
}

/// Ingredients of `Z(R) = Z0 + Z1(R)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConnectionBounds {
    pub y: Interval,
    /// `‖Π_{≤2K+1} − Π_{≤3K+2} A Π_{≤3K+2} DF Π_{≤2K+1}‖`, scalar columns over the ball.
    pub z0_finite: Interval,
    /// Bound on columns beyond order `2K + 1`.
    pub tail: Interval,
    /// `M` in the tail bound.
    pub m: Interval,
    pub df_norm: Interval,
    /// `max(‖A_{≤K}‖, 1)`.
    pub a_norm: Interval,
    pub tau: f64,
    pub mu: f64,
}

impl ConnectionBounds {
    pub fn z0(&self) -> Interval {
        self.z0_finite.max(self.tail)
    }

    /// `2 R (τ/2) ‖A‖ ‖L_C‖`.
    pub fn z1(&self, r: f64) -> Interval {
        Interval::point(r) * Interval::point(self.tau) * self.a_norm * lc_norm(Interval::point(self.mu))
    }

    pub fn z(&self, r: f64) -> Interval {
        self.z0() + self.z1(r)
    }
}

fn weights(pb: &HetProblem, mu: Interval) -> WeightProfile {
    pb.layout().weights(mu)
}

fn enclose_u(pb: &HetProblem, x: &[f64]) -> VecSeq3<ChebSeq<Interval>> {
    let (u, _) = unflatten_cheb3(x, pb.k);
    std::array::from_fn(|i| u[i].map(Interval::point))
}

/// `‖A F(x̄)‖` with `A` identity beyond order `K`.
pub fn y_het(pb: &HetProblem, x: &[f64], a: &Mat<f64>, mu: Interval) -> Result<Interval> {
    let (seq, bnd) = super::bvp::f_het_rigorous(pb, x)?;
    let (k, n1) = (pb.k, pb.k + 1);
    let mut head = vec![Interval::ZERO; pb.dim()];
    for i in 0..3 {
        for m in 0..=k {
            head[i * n1 + m] = seq[i].get(m);
        }
        head[3 * n1 + i] = bnd[i];
    }
    let n = head.len();
    let ah = mul_float_interval(a, &Mat::from_vec(n, 1, head))?;
    let w = weights(pb, mu);
    let mut y = Interval::ZERO;
    for (i, v) in ah.data().iter().enumerate() {
        y += v.abs() * w.get(i);
    }
    let ord = seq.iter().map(|s| s.order()).max().unwrap_or(0);
    let pw = powers(mu, ord);
    let two = Interval::exact(2);
    for s in &seq {
        for m in (k + 1)..=s.order() {
            y += s.get(m).abs() * two * pw[m];
        }
    }
    Ok(y)
}

/// `Z0` ingredients and `‖A‖` for the tail-extended `A` built from `a`.
///
/// The `α` and `θ` columns are enclosed over `|α − ᾱ|, |θ − θ̄| ≤ r_big`, so
/// that `Z1` only needs to account for the sequence block.
pub fn z_het(pb: &HetProblem, x: &[f64], a: &Mat<f64>, mu: Interval, r_big: f64) -> Result<ConnectionBounds> {
    let (k, n1) = (pb.k, pb.k + 1);
    let kc = 2 * k + 1;
    let nc1 = kc + 1;
    let n = pb.dim();
    let ncols = 3 * nc1 + 3;
    let rmax = 3 * k + 2;
    let th = Interval::point(pb.tau) * Interval::from_ratio(1, 2);
    let ur = enclose_u(pb, x);
    let mult = model::df_vecfield_seq(&ur, &pb.params);
    let pw = powers(mu, rmax);
    let two = Interval::exact(2);

    let mut dfin = Mat::<Interval>::zeros(n, ncols);
    let mut tail_lo = vec![0.0f64; ncols];
    let mut tail_hi = vec![0.0f64; ncols];
    for j in 0..3 {
        for l in 0..=kc {
            let col = j * nc1 + l;
            for i in 0..3 {
                let c = lc_mult_column(&mult[i][j], l);
                if c.order() > rmax {
                    return Err(Error::Dimension(format!(
                        "column {l} of the sequence block reaches order {} > {rmax}",
                        c.order()
                    )));
                }
                for r in 0..=c.order() {
                    let v = th * c.get(r);
                    if r <= k {
                        dfin.set(i * n1 + r, col, -v);
                    } else if v != Interval::ZERO {
                        let t = v.abs() * two * pw[r];
                        tail_hi[col] = add_up(tail_hi[col], t.hi());
                        tail_lo[col] = add_down(tail_lo[col], t.lo());
                    }
                }
            }
            if l <= k {
                let d = j * n1 + l;
                let e = dfin.get(d, col) + Interval::ONE;
                dfin.set(d, col, e);
            }
            dfin.set(3 * n1 + j, col, Interval::exact(e_entry(l)));
        }
    }
    let (_, s) = unflatten_cheb3(x, k);
    let ball = |v: f64| Interval::point(v).inflate(r_big);
    let (_, da) = unstable_rigorous(pb.pcert, ball(s[0]))?;
    let (_, jq) = stable_rigorous(pb.qcert, [ball(s[1]), ball(s[2])])?;
    let sc = |t: usize| 3 * nc1 + t;
    for i in 0..3 {
        dfin.set(i * n1, sc(0), -da[i]);
        for t in 0..2 {
            dfin.set(3 * n1 + i, sc(1 + t), -jq[i][t]);
        }
    }
    for i in 0..3 {
        if dfin.get(3 * n1 + i, sc(0)) != Interval::ZERO {
            return Err(Error::Dimension("boundary rows must not depend on α".into()));
        }
    }

    let mut defect = mul_float_interval(a, &dfin)?;
    for v in defect.data_mut() {
        *v = -*v;
    }
    let diag = (0..3)
        .flat_map(|j| (0..=k).map(move |l| (j * n1 + l, j * nc1 + l)))
        .chain((0..3).map(|t| (3 * n1 + t, sc(t))));
    for (r, c) in diag {
        *defect.at_mut(r, c) += Interval::ONE;
    }
    let w = weights(pb, mu);
    let (mut lo, mut hi) = weighted_column_sums(&defect, &w);
    drop(defect);
    for c in 0..ncols {
        hi[c] = add_up(hi[c], tail_hi[c]);
        lo[c] = add_down(lo[c], tail_lo[c]);
    }
    let w_in = WeightProfile::concat(&[WeightProfile::cheb(kc, mu).repeat(3), WeightProfile::ones(3)]);
    let z0_finite = sup_over_columns(&lo, &hi, &w_in);

    let (_, a_hi) = weighted_column_sums(a, &w);
    let a_pi0 = (0..3).map(|i| a_hi[i * n1]).fold(0.0, f64::max);
    let a_bnd = (0..3).map(|i| a_hi[3 * n1 + i]).fold(0.0, f64::max);
    let m = Interval::point(a_pi0) * lc_row0_tail(k, mu)? + lc_tail(k, mu)?;
    let mut df_norm = Interval::ZERO;
    for j in 0..3 {
        let mut col = Interval::ZERO;
        for mi in &mult {
            col += mi[j].norm(mu);
        }
        df_norm = df_norm.max(col);
    }
    // Evaluation rows on the columns beyond 2K + 1: 2 A e_bnd / (2 μ^l).
    let e_part = Interval::point(a_bnd) * e_tail(kc, mu)?;
    let tail = m * th * df_norm + e_part;
    let a_norm = weighted_opnorm(a, &w, &w).max(Interval::ONE);
    Ok(ConnectionBounds {
        y: Interval::ZERO,
        z0_finite,
        tail,
        m,
        df_norm,
        a_norm,
        tau: pb.tau,
        mu: mu.mid(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let mu = Interval::point(1.1);
        assert!(lc_norm(mu).contains(2.1));
        let v = lc_row0_tail(100, mu).unwrap();
        let expect = 1.1f64.powi(-102) / (102.0 * 102.0 - 1.0);
        assert!((v.mid() - expect).abs() <= 1e-12 * expect);
        assert!(e_tail(3, Interval::exact(2)).unwrap().contains(1.0 / 16.0));
    }
}
