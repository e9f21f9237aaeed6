//! Local stable and unstable manifolds by the parameterization method.
//!
//! The unknown is a Taylor triple `P(θ1, θ2)` with `F(P) = P − φ − Diag(L_T) f(P)`.
//! Internally the truncated coordinates are stored *interleaved*,
//! `3 · (k1 (K+1) + k2) + i`, in which `DF` is block lower triangular with
//! `3 × 3` diagonal blocks; operators handed out use the canonical layout.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{add_down, add_up, mul_down, mul_up, ComplexInterval, Interval};
use crate::linop::{
    block_lower_inverse, block_lower_solve, make_tail_extended, sup_over_columns,
    weighted_column_sums, Layout, Mat, RigorousMul, SeqOperator, WeightProfile,
};
use crate::model::{self, Params};
use crate::pointproofs::{same_half_plane_margin, EigenCertificate, EquilibriumCertificate, Stability};
use crate::rpa::{interval_of_existence, newton_with, ExistenceResult, NewtonOptions};
use crate::scalar::{Enclose, Scalar};
use crate::seqspace::{lt_divisor, powers, Taylor2Seq, VecSeq3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Stable,
    Unstable,
}

/// Float scalars the manifold step can run on: real for real eigenpairs,
/// complex for a conjugate pair.
pub trait ManifoldScalar: RigorousMul {
    fn from_complex(z: Complex64) -> Self;
    fn to_complex(self) -> Complex64;
    fn rig_from_complex(z: ComplexInterval) -> Self::Rigorous;
    fn rig_to_complex(x: Self::Rigorous) -> ComplexInterval;
}

impl ManifoldScalar for f64 {
    fn from_complex(z: Complex64) -> f64 {
        z.re
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    fn rig_from_complex(z: ComplexInterval) -> Interval {
        z.re
    }
    fn rig_to_complex(x: Interval) -> ComplexInterval {
        ComplexInterval::real(x)
    }
}

impl ManifoldScalar for Complex64 {
    fn from_complex(z: Complex64) -> Complex64 {
        z
    }
    fn to_complex(self) -> Complex64 {
        self
    }
    fn rig_from_complex(z: ComplexInterval) -> ComplexInterval {
        z
    }
    fn rig_to_complex(x: ComplexInterval) -> ComplexInterval {
        x
    }
}

/// Equilibrium, eigenvalues and eigenvectors entering `F`.
#[derive(Clone, Debug)]
pub struct ManifoldData<S> {
    pub c: [S; 3],
    pub lambda: [S; 2],
    pub v: [[S; 3]; 2],
    pub params: Params<S>,
}

/// Float data from the midpoints and rigorous data from the enclosures.
pub fn manifold_data<F: ManifoldScalar>(
    p: &Params<Interval>,
    eq: &EquilibriumCertificate,
    e: [&EigenCertificate; 2],
) -> (ManifoldData<F>, ManifoldData<F::Rigorous>) {
    let pf = p.mid();
    let float = ManifoldData {
        c: eq.c_bar.map(F::from_f64),
        lambda: e.map(|e| F::from_complex(e.lambda_bar)),
        v: e.map(|e| e.v_bar.map(F::from_complex)),
        params: Params {
            a: F::from_f64(pf.a),
            b: F::from_f64(pf.b),
        },
    };
    let rig = ManifoldData {
        c: eq.enclosure.map(F::lift_real),
        lambda: e.map(|e| F::rig_from_complex(e.eigenvalue)),
        v: e.map(|e| e.eigenvector.map(F::rig_from_complex)),
        params: Params {
            a: F::lift_real(p.a),
            b: F::lift_real(p.b),
        },
    };
    (float, rig)
}

/// `φ(θ) = c + s v1 θ1 + s v2 θ2`.
pub fn build_phi<S: Scalar>(d: &ManifoldData<S>, scale: f64) -> VecSeq3<Taylor2Seq<S>> {
    let s = S::from_f64(scale);
    std::array::from_fn(|i| {
        Taylor2Seq::from_fn(1, 1, |a, b| match (a, b) {
            (0, 0) => d.c[i],
            (1, 0) => d.v[0][i] * s,
            (0, 1) => d.v[1][i] * s,
            _ => S::zero(),
        })
    })
}

/// `P − φ − Diag(L_T) f(P)`; orders double through the quadratic terms.
pub fn f_manifold<S: Scalar>(
    pp: &VecSeq3<Taylor2Seq<S>>,
    phi: &VecSeq3<Taylor2Seq<S>>,
    lambda: [S; 2],
    params: &Params<S>,
) -> Result<VecSeq3<Taylor2Seq<S>>> {
    let fp = model::f(pp, params);
    let mut out: Vec<Taylor2Seq<S>> = Vec::with_capacity(3);
    for i in 0..3 {
        let lt = fp[i].apply_lt(lambda[0], lambda[1])?;
        out.push(pp[i].sub_seq(&phi[i]).sub_seq(&lt));
    }
    Ok(out.try_into().expect("three components"))
}

/// `1/(k1 λ1 + k2 λ2)` on `[0..=k]²`, zero for `k1 + k2 < 2`.
pub fn lt_table<S: Scalar>(k: usize, lambda: [S; 2]) -> Result<Vec<S>> {
    let mut out = Vec::with_capacity((k + 1) * (k + 1));
    for k1 in 0..=k {
        for k2 in 0..=k {
            if k1 + k2 < 2 {
                out.push(S::zero());
            } else {
                out.push(S::one().try_div(lt_divisor(k1, k2, lambda[0], lambda[1])).map_err(
                    |_| Error::Proof("resonant or near-resonant eigenvalues".into()),
                )?);
            }
        }
    }
    Ok(out)
}

pub fn interleave<S: Scalar>(pp: &VecSeq3<Taylor2Seq<S>>, k: usize) -> Vec<S> {
    let mut out = Vec::with_capacity(3 * (k + 1) * (k + 1));
    for k1 in 0..=k {
        for k2 in 0..=k {
            for c in pp {
                out.push(c.get(k1, k2));
            }
        }
    }
    out
}

pub fn deinterleave<S: Scalar>(x: &[S], k: usize) -> VecSeq3<Taylor2Seq<S>> {
    let n1 = k + 1;
    assert_eq!(x.len(), 3 * n1 * n1);
    std::array::from_fn(|i| Taylor2Seq::from_fn(k, k, |k1, k2| x[3 * (k1 * n1 + k2) + i]))
}

/// `perm[canonical] = interleaved`.
pub fn canonical_permutation(k: usize) -> Vec<usize> {
    let n = (k + 1) * (k + 1);
    (0..3 * n).map(|c| 3 * (c % n) + c / n).collect()
}

/// Interleaved truncation of `DF(P) = I − Diag(L_T) Df(P)` on `[0..=k]²`.
pub fn df_manifold<S: Scalar>(
    pp: &VecSeq3<Taylor2Seq<S>>,
    lambda: [S; 2],
    params: &Params<S>,
    k: usize,
) -> Result<Mat<S>> {
    let m = model::df_vecfield_seq(pp, params);
    let lt = lt_table(k, lambda)?;
    let n1 = k + 1;
    let n = 3 * n1 * n1;
    let mut out = Mat::zeros(n, n);
    for r1 in 0..=k {
        for r2 in 0..=k {
            let rp = r1 * n1 + r2;
            for i in 0..3 {
                out.set(3 * rp + i, 3 * rp + i, S::one());
            }
            let l = lt[rp];
            if l == S::zero() {
                continue;
            }
            for c1 in 0..=r1 {
                for c2 in 0..=r2 {
                    let cp = c1 * n1 + c2;
                    for (i, mi) in m.iter().enumerate() {
                        for (j, mij) in mi.iter().enumerate() {
                            let v = mij.get(r1 - c1, r2 - c2);
                            if v != S::zero() {
                                *out.at_mut(3 * rp + i, 3 * cp + j) += -(l * v);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn is_conjugate_pair<F: ManifoldScalar>(d: &ManifoldData<F>) -> bool {
    let (l1, l2) = (d.lambda[0].to_complex(), d.lambda[1].to_complex());
    l1.im != 0.0 && l2 == l1.conj() && (0..3).all(|i| d.v[1][i].to_complex() == d.v[0][i].to_complex().conj())
}

/// Enforce `P_(k2,k1) = conj P_(k1,k2)` exactly.
fn symmetrize<F: ManifoldScalar>(pp: &mut VecSeq3<Taylor2Seq<F>>) {
    for c in pp.iter_mut() {
        let (k1, k2) = c.orders();
        let k = k1.min(k2);
        for a in 0..=k {
            for b in a..=k {
                let x = c.get(a, b).to_complex();
                let y = c.get(b, a).to_complex().conj();
                let m = (x + y) * 0.5;
                c.set(a, b, F::from_complex(m));
                c.set(b, a, F::from_complex(m.conj()));
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ManifoldSolution<F> {
    pub p_bar: VecSeq3<Taylor2Seq<F>>,
    pub residual: f64,
    pub iterations: usize,
}

/// Newton on `Π_{≤K} F Π_{≤K}` from `P = φ`, with block forward substitution.
pub fn solve_manifold<F: ManifoldScalar>(
    d: &ManifoldData<F>,
    k: usize,
    scale: f64,
    opts: NewtonOptions,
) -> Result<ManifoldSolution<F>> {
    let phi = build_phi(d, scale);
    let residual = |x: &[F]| -> Result<Vec<F>> {
        let pp = deinterleave(x, k);
        Ok(interleave(&f_manifold(&pp, &phi, d.lambda, &d.params)?, k))
    };
    let out = newton_with(
        residual,
        |x, fx| {
            let j = df_manifold(&deinterleave(x, k), d.lambda, &d.params, k)?;
            block_lower_solve(&j, 3, fx)
        },
        interleave(&phi, k),
        opts,
    )?;
    if !out.success {
        return Err(Error::Newton(format!(
            "manifold Newton stalled at residual {:e} (scale {scale}); a smaller eigenvector scale may help",
            out.residual()
        )));
    }
    let mut p_bar = deinterleave(&out.x, k);
    let mut res = out.residual();
    if is_conjugate_pair(d) {
        symmetrize(&mut p_bar);
        res = crate::rpa::norm1(&residual(&interleave(&p_bar, k))?);
    }
    Ok(ManifoldSolution {
        p_bar,
        residual: res,
        iterations: out.iterations,
    })
}

/// Largest `|P_k|` with `k1 + k2 = K`.
pub fn top_order_magnitude<S: Scalar>(pp: &VecSeq3<Taylor2Seq<S>>, k: usize) -> f64 {
    let mut m = 0.0f64;
    for c in pp {
        for k1 in 0..=k {
            m = m.max(c.get(k1, k - k1).abs_sup());
        }
    }
    m
}

/// Eigenvector scale making the top-order coefficients about `target`.
///
/// Rescaling the eigenvectors by `s` maps `P_k` to `s^(k1+k2) P_k`, so one
/// solve at a trial scale fixes the answer.
pub fn tune_scale<F: ManifoldScalar>(
    d: &ManifoldData<F>,
    k: usize,
    target: f64,
    opts: NewtonOptions,
) -> Result<f64> {
    let mut trial = 1.0;
    let mut last_err = None;
    for _ in 0..8 {
        let loose = NewtonOptions {
            tol: opts.tol.max(1e-10),
            ..opts
        };
        match solve_manifold(d, k, trial, loose) {
            Ok(sol) => {
                let m = top_order_magnitude(&sol.p_bar, k);
                if m == 0.0 || !m.is_finite() {
                    return Ok(trial);
                }
                let s = trial * (target / m).powf(1.0 / k as f64);
                log::debug!("scale tuning: trial {trial}, top order {m:e}, tuned {s}");
                return Ok(s);
            }
            Err(e) => {
                last_err = Some(e);
                trial *= 0.25;
            }
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Newton("scale tuning failed".into())))
}

/// Interleaved `A_{≤K} ≈ (Π_{≤K} DF(P̄) Π_{≤K})⁻¹`.
pub fn a_manifold_interleaved<F: ManifoldScalar>(
    p_bar: &VecSeq3<Taylor2Seq<F>>,
    d: &ManifoldData<F>,
    k: usize,
) -> Result<Mat<F>> {
    let j = df_manifold(p_bar, d.lambda, &d.params, k)?;
    block_lower_inverse(&j, 3)
}

/// `A = A_{≤K} Π_{≤K} + Π_{>K}` in the canonical layout.
pub fn a_manifold<F: ManifoldScalar>(
    p_bar: &VecSeq3<Taylor2Seq<F>>,
    d: &ManifoldData<F>,
    k: usize,
) -> Result<SeqOperator<F>> {
    let a = a_manifold_interleaved(p_bar, d, k)?;
    make_tail_extended(a.permute_sym(&canonical_permutation(k)), Layout::Taylor3 { k })
}

/// `1/((K+1) m)` with `m ≤ min |Re λ_i|`.
pub fn lt_tail_bound(k: usize, min_re: Interval) -> Result<Interval> {
    Ok(Interval::ONE.checked_div(Interval::exact(k as i64 + 1) * min_re)?)
}

/// Ingredients of `Z(R) = Z0 + Z1(R)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifoldBounds {
    pub y: Interval,
    /// `‖Π_{≤K} − Π_{≤2K} A Π_{≤2K} DF(P̄) Π_{≤K}‖`.
    pub z0_finite: Interval,
    pub tail_bound: Interval,
    pub df_norm: Interval,
    /// `‖A_{≤K} Diag(L_T) Π_{≤K}‖`.
    pub a_lt_finite: Interval,
}

impl ManifoldBounds {
    pub fn z0(&self) -> Interval {
        self.z0_finite.max(self.tail_bound * self.df_norm)
    }

    pub fn z1(&self, r: f64) -> Interval {
        Interval::exact(2) * Interval::point(r) * self.a_lt_finite.max(self.tail_bound)
    }

    pub fn z(&self, r: f64) -> Interval {
        self.z0() + self.z1(r)
    }
}

fn weights_interleaved(k: usize, nu: Interval) -> WeightProfile {
    let p = powers(nu, 2 * k);
    let mut w = Vec::with_capacity(3 * (k + 1) * (k + 1));
    for k1 in 0..=k {
        for k2 in 0..=k {
            w.extend([p[k1 + k2]; 3]);
        }
    }
    WeightProfile::new(w)
}

/// `|1/(k1 λ1 + k2 λ2)|` on `[0..=n]²`, zero below order 2.
fn lt_abs_table<S: Scalar>(n: usize, lambda: [S; 2]) -> Result<Vec<Interval>> {
    let mut out = Vec::with_capacity((n + 1) * (n + 1));
    for k1 in 0..=n {
        for k2 in 0..=n {
            if k1 + k2 < 2 {
                out.push(Interval::ZERO);
            } else {
                let d = lt_divisor(k1, k2, lambda[0], lambda[1]).abs_enclosure();
                out.push(Interval::ONE.checked_div(d).map_err(|_| {
                    Error::Proof("resonant or near-resonant eigenvalues".into())
                })?);
            }
        }
    }
    Ok(out)
}

fn enclose_seq<F: Enclose>(pp: &VecSeq3<Taylor2Seq<F>>) -> VecSeq3<Taylor2Seq<F::Rigorous>> {
    std::array::from_fn(|i| pp[i].map(|x| x.enclose()))
}

/// `Y = ‖A F(P̄)‖` over the order-`2K` support.
pub fn y_manifold<F: ManifoldScalar>(
    p_bar: &VecSeq3<Taylor2Seq<F>>,
    a: &Mat<F>,
    rig: &ManifoldData<F::Rigorous>,
    scale: f64,
    k: usize,
    nu: Interval,
) -> Result<Interval> {
    let pr = enclose_seq(p_bar);
    let phi = build_phi(rig, scale);
    let fr = f_manifold(&pr, &phi, rig.lambda, &rig.params)?;
    let head = interleave(&fr, k);
    let n = head.len();
    let ah = F::mul_rig(a, &Mat::from_vec(n, 1, head))?;
    let w = weights_interleaved(k, nu);
    let mut y = Interval::ZERO;
    for (i, v) in ah.data().iter().enumerate() {
        y += v.abs_enclosure() * w.get(i);
    }
    for c in &fr {
        let (n1, n2) = c.orders();
        let pw = powers(nu, n1 + n2);
        for k1 in 0..=n1 {
            for k2 in 0..=n2 {
                if k1.max(k2) > k {
                    y += c.get(k1, k2).abs_enclosure() * pw[k1 + k2];
                }
            }
        }
    }
    Ok(y)
}

/// `Z0` and `Z1` ingredients for the tail-extended `A` built from `a`.
pub fn z_manifold<F: ManifoldScalar>(
    p_bar: &VecSeq3<Taylor2Seq<F>>,
    a: &Mat<F>,
    rig: &ManifoldData<F::Rigorous>,
    k: usize,
    nu: Interval,
) -> Result<(Interval, Interval, Interval, Interval)> {
    let l = rig.lambda.map(F::rig_to_complex);
    let min_re = same_half_plane_margin(l[0], l[1])?;
    let tail_bound = lt_tail_bound(k, min_re)?;
    let pr = enclose_seq(p_bar);
    let w = weights_interleaved(k, nu);
    let n1 = k + 1;

    let mut defect = {
        let df = df_manifold(&pr, rig.lambda, &rig.params, k)?;
        F::mul_rig(a, &df)?
    };
    let n = defect.rows();
    for (idx, x) in defect.data_mut().iter_mut().enumerate() {
        *x = if idx / n == idx % n { F::Rigorous::one() - *x } else { -*x };
    }
    let (mut lo, mut hi) = weighted_column_sums(&defect, &w);
    drop(defect);

    // Rows beyond K only see the non-constant multipliers −P3, −P1 and 2 P1.
    let lt_abs = lt_abs_table(2 * k, rig.lambda)?;
    let pw = powers(nu, 4 * k);
    let q1: Vec<Interval> = pr[0].coeffs().iter().map(|x| x.abs_enclosure()).collect();
    let q3: Vec<Interval> = pr[2].coeffs().iter().map(|x| x.abs_enclosure()).collect();
    let two = Interval::exact(2);
    for l1 in 0..=k {
        for l2 in 0..=k {
            let mut col0 = Interval::ZERO;
            let mut col2 = Interval::ZERO;
            for d1 in 0..=k {
                for d2 in 0..=k {
                    let (k1, k2) = (l1 + d1, l2 + d2);
                    if k1.max(k2) <= k {
                        continue;
                    }
                    let fac = lt_abs[k1 * (2 * k + 1) + k2] * pw[k1 + k2];
                    let di = d1 * n1 + d2;
                    col0 += (q3[di] + two * q1[di]) * fac;
                    col2 += q1[di] * fac;
                }
            }
            let base = 3 * (l1 * n1 + l2);
            for (j, add) in [(0, col0), (2, col2)] {
                hi[base + j] = add_up(hi[base + j], add.hi());
                lo[base + j] = add_down(lo[base + j], add.lo());
            }
        }
    }
    let z0_finite = sup_over_columns(&lo, &hi, &w);

    let m = model::df_vecfield_seq(&pr, &rig.params);
    let mut df_norm = Interval::ZERO;
    for j in 0..3 {
        let mut col = Interval::ZERO;
        for mi in &m {
            col += mi[j].norm(nu);
        }
        df_norm = df_norm.max(col);
    }

    let (alo, ahi) = weighted_column_sums(a, &w);
    let mut slo = vec![0.0; alo.len()];
    let mut shi = vec![0.0; ahi.len()];
    for c in 0..alo.len() {
        let pos = c / 3;
        let t = lt_abs[(pos / n1) * (2 * k + 1) + pos % n1];
        shi[c] = mul_up(ahi[c], t.hi());
        slo[c] = mul_down(alo[c], t.lo());
    }
    let a_lt_finite = sup_over_columns(&slo, &shi, &w);
    Ok((z0_finite, tail_bound, df_norm, a_lt_finite))
}

/// `sup_θ |DP̄(θ) Λ θ − f(P̄(θ))|` over deterministic samples of the unit torus.
pub fn invariance_residual(
    p_bar: &VecSeq3<Taylor2Seq<Complex64>>,
    lambda: [Complex64; 2],
    params: &Params<f64>,
    samples: usize,
) -> f64 {
    let pc = Params {
        a: Complex64::new(params.a, 0.0),
        b: Complex64::new(params.b, 0.0),
    };
    let d1: Vec<_> = p_bar.iter().map(|c| c.partial(1)).collect();
    let d2: Vec<_> = p_bar.iter().map(|c| c.partial(2)).collect();
    let golden = 0.5 * (5f64.sqrt() - 1.0);
    let mut worst = 0.0f64;
    for n in 0..samples {
        let a1 = std::f64::consts::TAU * ((n as f64 + 0.5) / samples as f64);
        let a2 = std::f64::consts::TAU * ((n as f64 * golden).fract());
        let t1 = Complex64::from_polar(1.0, a1);
        let t2 = Complex64::from_polar(1.0, a2);
        let u: [Complex64; 3] = std::array::from_fn(|i| p_bar[i].eval(t1, t2));
        let fu = model::f(&u, &pc);
        for i in 0..3 {
            let lhs = d1[i].eval(t1, t2) * lambda[0] * t1 + d2[i].eval(t1, t2) * lambda[1] * t2;
            worst = worst.max((lhs - fu[i]).norm());
        }
    }
    worst
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ManifoldConfig {
    pub k: usize,
    pub nu: f64,
    /// Fixed eigenvector scale; tuned when absent.
    pub scale: Option<f64>,
    pub scale_target: f64,
    pub r_factor: f64,
    pub newton: NewtonOptions,
}

impl Default for ManifoldConfig {
    fn default() -> Self {
        ManifoldConfig {
            k: 25,
            nu: 1.0625,
            scale: None,
            scale_target: 1e-12,
            r_factor: 10.0,
            newton: NewtonOptions {
                tol: 1e-12,
                max_iter: 30,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ManifoldCertificate {
    pub side: Side,
    pub base: String,
    pub k: usize,
    pub nu: f64,
    pub scale: f64,
    /// Float coefficients; the true parameterization is within `r`.
    pub p_bar: VecSeq3<Taylor2Seq<Complex64>>,
    pub real_coefficients: bool,
    pub r: f64,
    pub r_big: f64,
    pub existence: ExistenceResult,
    pub bounds: ManifoldBounds,
    pub lambda: [ComplexInterval; 2],
    pub eigenvectors: [[ComplexInterval; 3]; 2],
    pub newton_residual: f64,
    pub newton_iterations: usize,
    pub invariance_residual: f64,
}

impl ManifoldCertificate {
    /// Coefficient enclosures of `P̄` as point complex intervals.
    pub fn p_enclosure(&self) -> VecSeq3<Taylor2Seq<ComplexInterval>> {
        std::array::from_fn(|i| self.p_bar[i].map(|z| ComplexInterval::point(z.re, z.im)))
    }

    /// Real coefficients, available on the real side.
    pub fn p_real(&self) -> Option<VecSeq3<Taylor2Seq<f64>>> {
        self.real_coefficients
            .then(|| std::array::from_fn(|i| self.p_bar[i].map(|z| z.re)))
    }
}

fn check_side(e: &EigenCertificate, side: Side) -> Result<()> {
    let want = match side {
        Side::Stable => Stability::Stable,
        Side::Unstable => Stability::Unstable,
    };
    if e.stability != want {
        return Err(Error::Proof(format!(
            "eigenvalue {} is {:?}, expected {want:?}",
            e.eigenvalue, e.stability
        )));
    }
    Ok(())
}

fn run<F: ManifoldScalar>(
    p: &Params<Interval>,
    eq: &EquilibriumCertificate,
    e: [&EigenCertificate; 2],
    side: Side,
    cfg: &ManifoldConfig,
) -> Result<ManifoldCertificate> {
    let (df, rig) = manifold_data::<F>(p, eq, e);
    let k = cfg.k;
    if k < 2 {
        return Err(Error::Config("manifold order must be at least 2".into()));
    }
    if !(cfg.nu > 1.0) {
        return Err(Error::Config("manifold weight nu must exceed 1".into()));
    }
    let nu = Interval::point(cfg.nu);
    let scale = match cfg.scale {
        Some(s) => s,
        None => tune_scale(&df, k, cfg.scale_target, cfg.newton)?,
    };
    log::info!("manifold at {}: K = {k}, scale = {scale:.6}", eq.label);
    let sol = solve_manifold(&df, k, scale, cfg.newton)?;
    let a = a_manifold_interleaved(&sol.p_bar, &df, k)?;
    let y = y_manifold(&sol.p_bar, &a, &rig, scale, k, nu)?;
    let (z0_finite, tail_bound, df_norm, a_lt_finite) = z_manifold(&sol.p_bar, &a, &rig, k, nu)?;
    let bounds = ManifoldBounds {
        y,
        z0_finite,
        tail_bound,
        df_norm,
        a_lt_finite,
    };
    let r_big = cfg.r_factor * y.hi();
    let existence = interval_of_existence(y, bounds.z(r_big), r_big);
    log::info!(
        "manifold at {}: Y = {}, Z0 = {}, tail = {}, Z = {}",
        eq.label,
        y,
        bounds.z0_finite,
        tail_bound * df_norm,
        existence.z
    );
    let Some(r) = existence.radius() else {
        return Err(Error::Proof(format!(
            "manifold at {}: Y = {}, Z = {} (finite {}, tail {})",
            eq.label,
            y,
            existence.z,
            z0_finite,
            tail_bound * df_norm
        )));
    };
    let p_bar: VecSeq3<Taylor2Seq<Complex64>> =
        std::array::from_fn(|i| sol.p_bar[i].map(F::to_complex));
    let lambda_f = df.lambda.map(F::to_complex);
    let inv = invariance_residual(&p_bar, lambda_f, &p.mid(), 50);
    Ok(ManifoldCertificate {
        side,
        base: eq.label.clone(),
        k,
        nu: cfg.nu,
        scale,
        real_coefficients: p_bar.iter().all(|c| c.coeffs().iter().all(|z| z.im == 0.0)),
        p_bar,
        r,
        r_big,
        existence,
        bounds,
        lambda: e.map(|e| e.eigenvalue),
        eigenvectors: e.map(|e| e.eigenvector),
        newton_residual: sol.residual,
        newton_iterations: sol.iterations,
        invariance_residual: inv,
    })
}

/// Certify the local manifold of `eq` tangent to the eigenpairs `e1`, `e2`.
///
/// Real eigenpairs run in real arithmetic; a conjugate pair runs in complex
/// arithmetic with `P_(k2,k1) = conj P_(k1,k2)` enforced on `P̄`.
pub fn validate_manifold(
    p: &Params<Interval>,
    eq: &EquilibriumCertificate,
    e1: &EigenCertificate,
    e2: &EigenCertificate,
    side: Side,
    cfg: &ManifoldConfig,
) -> Result<ManifoldCertificate> {
    check_side(e1, side)?;
    check_side(e2, side)?;
    same_half_plane_margin(e1.eigenvalue, e2.eigenvalue)?;
    if e1.is_real && e2.is_real {
        run::<f64>(p, eq, [e1, e2], side, cfg)
    } else {
        run::<Complex64>(p, eq, [e1, e2], side, cfg)
    }
}

/// Eigenvector scale that `validate_manifold` would use under `cfg`.
pub fn resolve_scale(
    p: &Params<Interval>,
    eq: &EquilibriumCertificate,
    e1: &EigenCertificate,
    e2: &EigenCertificate,
    cfg: &ManifoldConfig,
) -> Result<f64> {
    if let Some(s) = cfg.scale {
        return Ok(s);
    }
    if e1.is_real && e2.is_real {
        let (d, _) = manifold_data::<f64>(p, eq, [e1, e2]);
        tune_scale(&d, cfg.k, cfg.scale_target, cfg.newton)
    } else {
        let (d, _) = manifold_data::<Complex64>(p, eq, [e1, e2]);
        tune_scale(&d, cfg.k, cfg.scale_target, cfg.newton)
    }
}
