//! Certified equilibria and eigenpairs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{ComplexInterval, Interval};
use crate::linop::{weighted_opnorm, Lu, Mat, WeightProfile};
use crate::model::{df, f, Params};
use crate::rpa::{interval_of_existence, newton, ExistenceResult, NewtonOptions};
use crate::scalar::{Enclose, Scalar};

/// Bounds of a finite-dimensional contraction proof around `x̄`.
#[derive(Clone, Debug)]
pub struct FiniteProof {
    pub existence: ExistenceResult,
    /// Radius of the box on which `Z` was evaluated.
    pub r_big: f64,
}

/// Newton–Kantorovich test in `(Fⁿ, ‖·‖₁)` with `A = DG(x̄)⁻¹` computed in floats.
///
/// `g` and `dg` must be interval extensions; `R = r_factor · sup Y`.
pub fn validate_finite<F: Enclose>(
    g: impl Fn(&[F::Rigorous]) -> Vec<F::Rigorous>,
    dg: impl Fn(&[F::Rigorous]) -> Mat<F::Rigorous>,
    x_bar: &[F],
    r_factor: f64,
) -> Result<FiniteProof> {
    let n = x_bar.len();
    let point: Vec<F::Rigorous> = x_bar.iter().map(|x| x.enclose()).collect();
    let j_mid = dg(&point).map(F::midpoint);
    let a = Lu::factor(&j_mid)?.inverse()?;
    let a_rig = a.map(|x| x.enclose());
    let ones = WeightProfile::ones(n);

    let gx = g(&point);
    let agx = a_rig.matvec(&gx)?;
    let y = agx
        .iter()
        .fold(Interval::ZERO, |acc, v| acc + v.abs_enclosure());

    let r_big = r_factor * y.hi();
    let boxed: Vec<F::Rigorous> = x_bar.iter().map(|x| x.ball(r_big)).collect();
    let defect = Mat::<F::Rigorous>::identity(n).sub_mat(&a_rig.mul_naive(&dg(&boxed))?);
    let z = weighted_opnorm(&defect, &ones, &ones);
    Ok(FiniteProof {
        existence: interval_of_existence(y, z, r_big),
        r_big,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquilibriumCertificate {
    pub label: String,
    pub c_bar: [f64; 3],
    /// Certified radius in the 1-norm.
    pub r: f64,
    pub enclosure: [Interval; 3],
    pub existence: ExistenceResult,
    pub r_big: f64,
    pub newton_residual: f64,
    pub newton_iterations: usize,
}

impl EquilibriumCertificate {
    /// Componentwise box containing the 1-norm ball of radius `r`.
    pub fn ball(&self) -> [Interval; 3] {
        self.enclosure
    }
}

/// Newton from `guess`, then the contraction test for `f = 0`.
pub fn validate_equilibrium(
    label: &str,
    p: &Params<Interval>,
    guess: [f64; 3],
    r_factor: f64,
    opts: NewtonOptions,
) -> Result<EquilibriumCertificate> {
    let pf = p.mid();
    let out = newton(
        |x: &[f64]| Ok(f(&[x[0], x[1], x[2]], &pf).to_vec()),
        |x: &[f64]| Ok(jac_mat(&df(&[x[0], x[1], x[2]], &pf))),
        guess.to_vec(),
        opts,
    )?;
    if !out.success {
        return Err(Error::Newton(format!(
            "equilibrium {label}: residual {:e} after {} iterations",
            out.residual(),
            out.iterations
        )));
    }
    let c_bar = [out.x[0], out.x[1], out.x[2]];
    let proof = validate_finite::<f64>(
        |x| f(&[x[0], x[1], x[2]], p).to_vec(),
        |x| jac_mat(&df(&[x[0], x[1], x[2]], p)),
        &c_bar,
        r_factor,
    )?;
    let Some(r) = proof.existence.radius() else {
        return Err(Error::Proof(format!(
            "equilibrium {label}: Y = {}, Z = {}",
            proof.existence.y, proof.existence.z
        )));
    };
    Ok(EquilibriumCertificate {
        label: label.to_string(),
        c_bar,
        r,
        enclosure: c_bar.map(|c| Interval::point(c).inflate(r)),
        existence: proof.existence,
        r_big: proof.r_big,
        newton_residual: out.residual(),
        newton_iterations: out.iterations,
    })
}

fn jac_mat<S: Scalar>(j: &[[S; 3]; 3]) -> Mat<S> {
    Mat::from_fn(3, 3, |r, c| j[r][c])
}

/// Eigenvalue/eigenvector guess with `v[l_star] = 1` and `|v_i| ≤ 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenGuess {
    pub lambda: Complex64,
    pub v: [Complex64; 3],
    pub l_star: usize,
    pub is_real: bool,
}

fn charpoly(j: &[[f64; 3]; 3]) -> [f64; 3] {
    let t = j[0][0] + j[1][1] + j[2][2];
    let m = j[0][0] * j[1][1] - j[0][1] * j[1][0] + j[0][0] * j[2][2] - j[0][2] * j[2][0]
        + j[1][1] * j[2][2]
        - j[1][2] * j[2][1];
    let d = j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1])
        - j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0])
        + j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
    // λ³ + c2 λ² + c1 λ + c0
    [-d, m, -t]
}

/// Coefficients `[c0, c1, c2]` of the monic characteristic polynomial.
pub fn characteristic_polynomial(j: &[[f64; 3]; 3]) -> [f64; 3] {
    charpoly(j)
}

fn cubic_roots(c: [f64; 3]) -> [Complex64; 3] {
    let p = |x: f64| ((x + c[2]) * x + c[1]) * x + c[0];
    let bound = 1.0 + c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let (mut lo, mut hi) = (-bound, bound);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if p(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r = 0.5 * (lo + hi);
    let b1 = c[2] + r;
    let b2 = c[1] + r * b1;
    let disc = b1 * b1 - 4.0 * b2;
    let (q1, q2) = if disc >= 0.0 {
        let s = disc.sqrt();
        let q = -0.5 * (b1 + b1.signum() * s);
        let q = if q == 0.0 { -0.5 * s } else { q };
        let other = if q != 0.0 { b2 / q } else { 0.0 };
        (Complex64::new(q, 0.0), Complex64::new(other, 0.0))
    } else {
        let s = (-disc).sqrt();
        (Complex64::new(-0.5 * b1, 0.5 * s), Complex64::new(-0.5 * b1, -0.5 * s))
    };
    let polish = |mut z: Complex64| {
        for _ in 0..4 {
            let pz = ((z + c[2]) * z + c[1]) * z + c[0];
            let dz = (3.0 * z + 2.0 * c[2]) * z + c[1];
            if dz.norm() == 0.0 {
                break;
            }
            z -= pz / dz;
        }
        z
    };
    let mut out = [Complex64::new(r, 0.0), polish(q1), polish(q2)];
    if disc >= 0.0 {
        out[1].im = 0.0;
        out[2].im = 0.0;
    }
    out
}

fn cross(a: [Complex64; 3], b: [Complex64; 3]) -> [Complex64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Eigenpairs of a 3×3 real matrix with simple spectrum.
///
/// Roots of the characteristic cubic are polished by Newton; each
/// eigenvector is the best-conditioned cross product of two rows of `J − λI`.
pub fn eigen_initial_guesses(j: &[[f64; 3]; 3]) -> Result<Vec<EigenGuess>> {
    let roots = cubic_roots(charpoly(j));
    let scale = roots.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    for a in 0..3 {
        for b in a + 1..3 {
            if (roots[a] - roots[b]).norm() < 1e-8 * scale {
                return Err(Error::Guess(format!(
                    "repeated eigenvalue near {}",
                    roots[a]
                )));
            }
        }
    }
    let mut out = Vec::with_capacity(3);
    for &lambda in &roots {
        let rows: [[Complex64; 3]; 3] = std::array::from_fn(|r| {
            std::array::from_fn(|c| {
                let d = if r == c { lambda } else { Complex64::new(0.0, 0.0) };
                Complex64::new(j[r][c], 0.0) - d
            })
        });
        let v = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(a, b)| cross(rows[a], rows[b]))
            .max_by(|x, y| {
                let nx: f64 = x.iter().map(|z| z.norm()).sum();
                let ny: f64 = y.iter().map(|z| z.norm()).sum();
                nx.total_cmp(&ny)
            })
            .expect("three candidates");
        let l_star = (0..3)
            .max_by(|&a, &b| v[a].norm().total_cmp(&v[b].norm()))
            .expect("three components");
        if v[l_star].norm() == 0.0 {
            return Err(Error::Guess(format!("no eigenvector found for {lambda}")));
        }
        let pivot = v[l_star];
        let is_real = lambda.im == 0.0;
        let v = v.map(|z| {
            let w = z / pivot;
            if is_real {
                Complex64::new(w.re, 0.0)
            } else {
                w
            }
        });
        out.push(EigenGuess {
            lambda,
            v,
            l_star,
            is_real,
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    Stable,
    Unstable,
    /// `0 ∈ Re λ`: sign not certified.
    Indefinite,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigenCertificate {
    pub lambda_bar: Complex64,
    pub v_bar: [Complex64; 3],
    pub l_star: usize,
    pub is_real: bool,
    pub r: f64,
    pub eigenvalue: ComplexInterval,
    pub eigenvector: [ComplexInterval; 3],
    pub stability: Stability,
    pub existence: ExistenceResult,
    pub r_big: f64,
    pub newton_residual: f64,
}

impl EigenCertificate {
    pub fn re_lambda(&self) -> Interval {
        self.eigenvalue.re
    }
}

fn eig_residual<S: Scalar>(j: &[[S; 3]; 3], x: &[S], l: usize) -> Vec<S> {
    let (v, lam) = (&x[..3], x[3]);
    let mut out: Vec<S> = (0..3)
        .map(|r| {
            let mut acc = -(lam * v[r]);
            for c in 0..3 {
                acc += j[r][c] * v[c];
            }
            acc
        })
        .collect();
    out.push(v[l] - S::one());
    out
}

fn eig_jacobian<S: Scalar>(j: &[[S; 3]; 3], x: &[S], l: usize) -> Mat<S> {
    let (v, lam) = (&x[..3], x[3]);
    Mat::from_fn(4, 4, |r, c| match (r, c) {
        (3, c) if c == l => S::one(),
        (3, _) => S::zero(),
        (r, 3) => -v[r],
        (r, c) if r == c => j[r][c] - lam,
        (r, c) => j[r][c],
    })
}

fn stability_of(re: Interval) -> Stability {
    if re.is_negative() {
        Stability::Stable
    } else if re.is_positive() {
        Stability::Unstable
    } else {
        Stability::Indefinite
    }
}

fn validate_pair<F: Enclose>(
    j_float: [[F; 3]; 3],
    j_box: [[F::Rigorous; 3]; 3],
    guess: &EigenGuess,
    lift: impl Fn(Complex64) -> F,
    back: impl Fn(F) -> Complex64,
    r_factor: f64,
    opts: NewtonOptions,
) -> Result<(Vec<Complex64>, FiniteProof, f64)> {
    let l = guess.l_star;
    let mut x0: Vec<F> = guess.v.iter().map(|&z| lift(z)).collect();
    x0.push(lift(guess.lambda));
    let out = newton(
        |x: &[F]| Ok(eig_residual(&j_float, x, l)),
        |x: &[F]| Ok(eig_jacobian(&j_float, x, l)),
        x0,
        opts,
    )?;
    if !out.success {
        return Err(Error::Newton(format!(
            "eigenpair near {}: residual {:e}",
            guess.lambda,
            out.residual()
        )));
    }
    let proof = validate_finite::<F>(
        |x| eig_residual(&j_box, x, l),
        |x| eig_jacobian(&j_box, x, l),
        &out.x,
        r_factor,
    )?;
    Ok((out.x.iter().map(|&z| back(z)).collect(), proof, out.residual()))
}

/// Certify the eigenpair near `guess` of `Df(c)` for every `c` in the
/// equilibrium enclosure.
pub fn validate_eigenpair(
    p: &Params<Interval>,
    eq: &EquilibriumCertificate,
    guess: &EigenGuess,
    r_factor: f64,
    opts: NewtonOptions,
) -> Result<EigenCertificate> {
    let pf = p.mid();
    let j_float = df(&eq.c_bar, &pf);
    let j_box = df(&eq.ball(), p);
    let (xs, proof, newton_residual) = if guess.is_real {
        validate_pair::<f64>(
            j_float,
            j_box,
            guess,
            |z| z.re,
            |x| Complex64::new(x, 0.0),
            r_factor,
            opts,
        )?
    } else {
        let lift_j = |m: [[f64; 3]; 3]| m.map(|r| r.map(|v| Complex64::new(v, 0.0)));
        validate_pair::<Complex64>(
            lift_j(j_float),
            j_box.map(|r| r.map(ComplexInterval::real)),
            guess,
            |z| z,
            |z| z,
            r_factor,
            opts,
        )?
    };
    let existence = proof.existence.clone();
    let Some(r) = existence.radius() else {
        return Err(Error::Proof(format!(
            "eigenpair near {}: Y = {}, Z = {}",
            guess.lambda, existence.y, existence.z
        )));
    };
    let ball = |z: Complex64| {
        let c = ComplexInterval::point(z.re, z.im).inflate(r);
        if guess.is_real {
            ComplexInterval::real(c.re)
        } else {
            c
        }
    };
    let eigenvalue = ball(xs[3]);
    Ok(EigenCertificate {
        lambda_bar: xs[3],
        v_bar: [xs[0], xs[1], xs[2]],
        l_star: guess.l_star,
        is_real: guess.is_real,
        r,
        eigenvalue,
        eigenvector: [ball(xs[0]), ball(xs[1]), ball(xs[2])],
        stability: stability_of(eigenvalue.re),
        existence,
        r_big: proof.r_big,
        newton_residual,
    })
}

/// Certificate for `(λ̄*, v̄*)`, valid because `Df` is real.
pub fn conjugate_pair(e: &EigenCertificate) -> EigenCertificate {
    let mut c = e.clone();
    c.lambda_bar = e.lambda_bar.conj();
    c.v_bar = e.v_bar.map(|z| z.conj());
    c.eigenvalue = e.eigenvalue.conj();
    c.eigenvector = e.eigenvector.map(|z| z.conj());
    c
}

/// All three eigenpairs at `eq`, each complex pair validated once.
pub fn validate_spectrum(
    p: &Params<Interval>,
    eq: &EquilibriumCertificate,
    r_factor: f64,
    opts: NewtonOptions,
) -> Result<Vec<EigenCertificate>> {
    let j = df(&eq.c_bar, &p.mid());
    let guesses = eigen_initial_guesses(&j)?;
    let mut out = Vec::with_capacity(3);
    for g in guesses.iter().filter(|g| g.is_real || g.lambda.im > 0.0) {
        let cert = validate_eigenpair(p, eq, g, r_factor, opts)?;
        if !cert.is_real {
            let conj = conjugate_pair(&cert);
            out.push(cert);
            out.push(conj);
        } else {
            out.push(cert);
        }
    }
    out.sort_by(|a, b| {
        a.lambda_bar
            .re
            .total_cmp(&b.lambda_bar.re)
            .then(a.lambda_bar.im.total_cmp(&b.lambda_bar.im))
    });
    Ok(out)
}

/// Stable or unstable subspace, as required by the manifold step.
pub fn select(certs: &[EigenCertificate], stability: Stability) -> Vec<EigenCertificate> {
    certs
        .iter()
        .filter(|c| c.stability == stability)
        .cloned()
        .collect()
}

/// Lower bound for `min |Re λ_i|` when both eigenvalues share a half plane.
pub fn same_half_plane_margin(l1: ComplexInterval, l2: ComplexInterval) -> Result<Interval> {
    let (a, b) = (l1.re, l2.re);
    let same = (a.is_negative() && b.is_negative()) || (a.is_positive() && b.is_positive());
    if !same {
        return Err(Error::Proof(
            "eigenvalues are not certified in a common open half plane".into(),
        ));
    }
    let m = a.abs().lo().min(b.abs().lo());
    Ok(Interval::point(m))
}

fn count_word(n: usize) -> &'static str {
    match n {
        1 => "one",
        2 => "two",
        3 => "three",
        _ => "no",
    }
}

/// Plain-language description like `"two real stable eigenvalues and one real unstable eigenvalue"`.
pub fn spectrum_summary(certs: &[EigenCertificate]) -> String {
    let mut parts = Vec::new();
    for (real, st) in [
        (true, Stability::Stable),
        (true, Stability::Unstable),
        (false, Stability::Stable),
        (false, Stability::Unstable),
        (true, Stability::Indefinite),
        (false, Stability::Indefinite),
    ] {
        let n = certs
            .iter()
            .filter(|c| c.is_real == real && c.stability == st)
            .count();
        if n == 0 {
            continue;
        }
        let kind = if real { "real" } else { "complex conjugate" };
        let st = match st {
            Stability::Stable => "stable",
            Stability::Unstable => "unstable",
            Stability::Indefinite => "sign-indefinite",
        };
        let noun = if n == 1 { "eigenvalue" } else { "eigenvalues" };
        parts.push(format!("{} {kind} {st} {noun}", count_word(n)));
    }
    parts.join(" and ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c1_guess() -> [f64; 3] {
        [0.45f64.sqrt(), 0.0, 1.0]
    }

    #[test]
    fn origin_is_exact() {
        let p = Params::standard();
        let c = validate_equilibrium("c0", &p, [0.01, -0.02, 0.01], 10.0, NewtonOptions::default())
            .unwrap();
        assert!(c.enclosure.iter().all(|e| e.contains(0.0)));
        assert!(c.existence.success);
    }

    #[test]
    fn c1_radius_tiny() {
        let p = Params::standard();
        let c = validate_equilibrium("c1", &p, c1_guess(), 10.0, NewtonOptions::default()).unwrap();
        assert!(c.r < 1e-14, "r = {}", c.r);
        assert!(c.enclosure[0].contains(0.6708203932499369));
        let fb = f(&c.enclosure, &p);
        assert!(fb.iter().all(|v| v.contains_zero()));
    }

    #[test]
    fn spectra() {
        let p = Params::standard();
        let opts = NewtonOptions::default();
        let c0 = validate_equilibrium("c0", &p, [0.0; 3], 10.0, opts).unwrap();
        let s0 = validate_spectrum(&p, &c0, 10.0, opts).unwrap();
        assert!(spectrum_summary(&s0).contains("two real stable eigenvalues and one real unstable"));
        assert!(s0.iter().any(|e| e.eigenvalue.re.contains(-0.45)));

        let c1 = validate_equilibrium("c1", &p, c1_guess(), 10.0, opts).unwrap();
        let s1 = validate_spectrum(&p, &c1, 10.0, opts).unwrap();
        assert!(spectrum_summary(&s1).contains("two complex conjugate unstable eigenvalues"));
        let unstable = select(&s1, Stability::Unstable);
        assert_eq!(unstable.len(), 2);
        assert!(same_half_plane_margin(unstable[0].eigenvalue, unstable[1].eigenvalue).is_ok());
        for e in &s1 {
            assert_eq!(e.v_bar[e.l_star], Complex64::new(1.0, 0.0));
        }
    }
}
