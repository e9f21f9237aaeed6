//! The zero-finding problem `F(u, α, θ) = 0` on Chebyshev coefficients and its derivative.
//!
//! Coordinates follow `Layout::Cheb3Scalars { k, scalars: 3 }`: three coefficient
//! blocks `0..=K`, then `α`, `θ1`, `θ2`.

use num_complex::Complex64;

use super::eval::{real_part, rigorous_eval_p};
use super::guess::{stable_jacobian, stable_point, OrbitGuess};
use crate::error::{Error, Result};
use crate::interval::{unit_circle, ComplexInterval, Interval};
use crate::linop::{flatten_cheb3, unflatten_cheb3, Layout, Lu, Mat};
use crate::manifold::ManifoldCertificate;
use crate::model::{self, Params};
use crate::rpa::{newton_with, NewtonOptions};
use crate::scalar::Scalar;
use crate::seqspace::{ChebSeq, VecSeq3};

/// `|θ_j|` bound enforced during Newton.
pub const THETA_BOUND: f64 = 0.9;

/// Inputs shared by every evaluation of `F` and `DF`.
#[derive(Clone, Copy, Debug)]
pub struct HetProblem<'a> {
    pub k: usize,
    pub tau: f64,
    pub params: Params<Interval>,
    /// Unstable manifold of the departure equilibrium.
    pub pcert: &'a ManifoldCertificate,
    /// Stable manifold of the arrival equilibrium.
    pub qcert: &'a ManifoldCertificate,
}

impl HetProblem<'_> {
    pub fn layout(&self) -> Layout {
        Layout::Cheb3Scalars { k: self.k, scalars: 3 }
    }

    pub fn dim(&self) -> usize {
        self.layout().dim()
    }

    fn n1(&self) -> usize {
        self.k + 1
    }

    /// Index of the `α`, `θ1`, `θ2` slots (`s = 0, 1, 2`).
    pub fn scalar_index(&self, s: usize) -> usize {
        3 * self.n1() + s
    }
}

/// `ℰ_l`: `1` at `l = 0`, `2` otherwise.
pub fn e_entry(l: usize) -> i64 {
    if l == 0 {
        1
    } else {
        2
    }
}

/// `L_C (m * e_l)` where `e_l` is the `l`-th coordinate vector.
pub fn lc_mult_column<S: Scalar>(m: &ChebSeq<S>, l: usize) -> ChebSeq<S> {
    let n = m.order() + l;
    let v = (0..=n)
        .map(|k| if l == 0 { m.get(k) } else { m.get(k.abs_diff(l)) + m.get(k + l) })
        .collect();
    ChebSeq::from_coeffs(v).apply_lc()
}

/// Float `P̄(γ(α))` and `d/dα P̄(γ(α))`.
pub fn unstable_float(cert: &ManifoldCertificate, alpha: f64) -> ([f64; 3], [f64; 3]) {
    let z = Complex64::from_polar(1.0, alpha);
    let zc = z.conj();
    let i = Complex64::i();
    let value = std::array::from_fn(|c| cert.p_bar[c].eval(z, zc).re);
    let d = std::array::from_fn(|c| {
        let d1 = cert.p_bar[c].partial(1).eval(z, zc);
        let d2 = cert.p_bar[c].partial(2).eval(z, zc);
        (d1 * i * z - d2 * i * zc).re
    });
    (value, d)
}

/// Enclosures of `P⋆(γ(α))` and `d/dα P⋆(γ(α))` for `α` in an interval.
pub fn unstable_rigorous(cert: &ManifoldCertificate, alpha: Interval) -> Result<([Interval; 3], [Interval; 3])> {
    let (z, zc) = unit_circle(alpha);
    let ev = rigorous_eval_p(cert, [z, zc])?;
    let i = ComplexInterval::i();
    let mut value = [Interval::ZERO; 3];
    let mut d = [Interval::ZERO; 3];
    for c in 0..3 {
        value[c] = real_part(ev.value[c], "unstable chart value")?;
        let dz = ev.jac[c][0] * (i * z) - ev.jac[c][1] * (i * zc);
        d[c] = real_part(dz, "unstable chart derivative")?;
    }
    Ok((value, d))
}

/// Enclosures of `Q⋆(θ)` and `∂_θ Q⋆(θ)` for real `θ` in a box.
pub fn stable_rigorous(cert: &ManifoldCertificate, theta: [Interval; 2]) -> Result<([Interval; 3], [[Interval; 2]; 3])> {
    let ev = rigorous_eval_p(cert, theta.map(ComplexInterval::real))?;
    let mut value = [Interval::ZERO; 3];
    let mut jac = [[Interval::ZERO; 2]; 3];
    for c in 0..3 {
        value[c] = real_part(ev.value[c], "stable chart value")?;
        for j in 0..2 {
            jac[c][j] = real_part(ev.jac[c][j], "stable chart derivative")?;
        }
    }
    Ok((value, jac))
}

/// `Π_{≤K} F(x)` in floating point, with `P̄`, `Q̄` in place of `P⋆`, `Q⋆`.
pub fn f_het_float(pb: &HetProblem, x: &[f64]) -> Vec<f64> {
    let (k, n1) = (pb.k, pb.n1());
    let (u, s) = unflatten_cheb3(x, k);
    let pf = pb.params.mid();
    let th = 0.5 * pb.tau;
    let fu = model::f(&u, &pf);
    let (pv, _) = unstable_float(pb.pcert, s[0]);
    let qv = stable_point(pb.qcert, [s[1], s[2]]);
    let mut out = vec![0.0; pb.dim()];
    for i in 0..3 {
        let lc = fu[i].apply_lc();
        for m in 0..=k {
            let p0 = if m == 0 { pv[i] } else { 0.0 };
            out[i * n1 + m] = u[i].get(m) - p0 - th * lc.get(m);
        }
        out[3 * n1 + i] = u[i].eval_at_one() - qv[i];
    }
    out
}

/// `Π_{≤K} DF(x) Π_{≤K}` in floating point.
pub fn df_het_float(pb: &HetProblem, x: &[f64]) -> Mat<f64> {
    let (k, n1) = (pb.k, pb.n1());
    let (u, s) = unflatten_cheb3(x, k);
    let pf = pb.params.mid();
    let th = 0.5 * pb.tau;
    let m = model::df(&u, &pf);
    let n = pb.dim();
    let mut d = Mat::zeros(n, n);
    for j in 0..3 {
        for l in 0..=k {
            let col = j * n1 + l;
            for i in 0..3 {
                let c = lc_mult_column(&m[i][j], l);
                for r in 0..=k {
                    let id = if i == j && r == l { 1.0 } else { 0.0 };
                    d.set(i * n1 + r, col, id - th * c.get(r));
                }
            }
            d.set(3 * n1 + j, col, e_entry(l) as f64);
        }
    }
    let (_, da) = unstable_float(pb.pcert, s[0]);
    let jq = stable_jacobian(pb.qcert, [s[1], s[2]]);
    for i in 0..3 {
        d.set(i * n1, pb.scalar_index(0), -da[i]);
        for t in 0..2 {
            d.set(3 * n1 + i, pb.scalar_index(1 + t), -jq[t][i]);
        }
    }
    d
}

/// Rigorous `F(x̄)`: full sequence part (order `2K + 1`) and the boundary rows.
pub fn f_het_rigorous(pb: &HetProblem, x: &[f64]) -> Result<(VecSeq3<ChebSeq<Interval>>, [Interval; 3])> {
    let (u, s) = unflatten_cheb3(x, pb.k);
    let ur: VecSeq3<ChebSeq<Interval>> = std::array::from_fn(|i| u[i].map(Interval::point));
    let th = Interval::point(pb.tau) * Interval::from_ratio(1, 2);
    let fu = model::f(&ur, &pb.params);
    let (pv, _) = unstable_rigorous(pb.pcert, Interval::point(s[0]))?;
    let (qv, _) = stable_rigorous(pb.qcert, [Interval::point(s[1]), Interval::point(s[2])])?;
    let seq = std::array::from_fn(|i| {
        let lc = fu[i].apply_lc().scale_by(th);
        ur[i].sub_seq(&ChebSeq::constant(pv[i])).sub_seq(&lc)
    });
    let bnd = std::array::from_fn(|i| ur[i].eval_at_one() - qv[i]);
    Ok((seq, bnd))
}

/// Float Newton solution of the truncated problem.
#[derive(Clone, Debug)]
pub struct BvpSolution {
    pub x: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

/// Newton on `Π_{≤K} F Π_{≤K}` from the integrated guess, keeping `|θ_j| ≤ 0.9`.
pub fn solve_bvp(pb: &HetProblem, guess: &OrbitGuess, opts: NewtonOptions) -> Result<BvpSolution> {
    let u: VecSeq3<ChebSeq<f64>> = std::array::from_fn(|i| guess.u[i].resize(pb.k));
    let x0 = flatten_cheb3(&u, &[guess.alpha, guess.theta[0], guess.theta[1]], pb.k);
    let slots = [pb.scalar_index(1), pb.scalar_index(2)];
    let out = newton_with(
        |x| Ok(f_het_float(pb, x)),
        |x, fx| {
            let j = df_het_float(pb, x);
            let mut step = Lu::factor(&j)
                .map_err(|e| Error::Newton(format!("singular boundary-value Jacobian: {e}")))?
                .solve(fx)?;
            for &s in &slots {
                let next = (x[s] - step[s]).clamp(-THETA_BOUND, THETA_BOUND);
                step[s] = x[s] - next;
            }
            Ok(step)
        },
        x0,
        opts,
    )?;
    if !out.success {
        return Err(Error::Newton(format!(
            "boundary-value Newton stalled at residual {:e} after {} iterations",
            out.residual(),
            out.iterations
        )));
    }
    Ok(BvpSolution {
        residual: out.residual(),
        iterations: out.iterations,
        x: out.x,
    })
}
