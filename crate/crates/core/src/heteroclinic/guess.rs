//! Floating-point construction of the initial orbit guess.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linop::{Lu, Mat};
use crate::manifold::ManifoldCertificate;
use crate::model::{self, Params};
use crate::seqspace::{ChebSeq, VecSeq3};

pub type Point = [f64; 3];

fn axpy(a: f64, x: &Point, y: &Point) -> Point {
    [y[0] + a * x[0], y[1] + a * x[1], y[2] + a * x[2]]
}

fn norm2(w: &Point) -> f64 {
    (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt()
}

/// One classical Runge–Kutta step.
pub fn rk4_step(p: &Params<f64>, w: &Point, h: f64) -> Point {
    let k1 = model::f(w, p);
    let k2 = model::f(&axpy(0.5 * h, &k1, w), p);
    let k3 = model::f(&axpy(0.5 * h, &k2, w), p);
    let k4 = model::f(&axpy(h, &k3, w), p);
    std::array::from_fn(|i| w[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

/// Flow from `w` over time `t` in equal steps no longer than `h_max`.
pub fn flow(p: &Params<f64>, w: &Point, t: f64, h_max: f64) -> Point {
    if t <= 0.0 {
        return *w;
    }
    let n = (t / h_max).ceil().max(1.0) as usize;
    let h = t / n as f64;
    let mut x = *w;
    for _ in 0..n {
        x = rk4_step(p, &x, h);
    }
    x
}

/// `P̄(e^{iα}, e^{−iα})` with the (vanishing) imaginary part dropped.
pub fn unstable_point(cert: &ManifoldCertificate, alpha: f64) -> Point {
    let (t1, t2) = (Complex64::from_polar(1.0, alpha), Complex64::from_polar(1.0, -alpha));
    std::array::from_fn(|i| cert.p_bar[i].eval(t1, t2).re)
}

/// `Q̄(θ1, θ2)` for real `θ`.
pub fn stable_point(cert: &ManifoldCertificate, theta: [f64; 2]) -> Point {
    let (t1, t2) = (Complex64::new(theta[0], 0.0), Complex64::new(theta[1], 0.0));
    std::array::from_fn(|i| cert.p_bar[i].eval(t1, t2).re)
}

/// Columns `∂θ1 Q̄`, `∂θ2 Q̄` at real `θ`.
pub fn stable_jacobian(cert: &ManifoldCertificate, theta: [f64; 2]) -> [Point; 2] {
    let (t1, t2) = (Complex64::new(theta[0], 0.0), Complex64::new(theta[1], 0.0));
    [1, 2].map(|v| std::array::from_fn(|i| cert.p_bar[i].partial(v).eval(t1, t2).re))
}

/// Parameters of the scans that locate `α₀` and `τ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanOptions {
    pub grid: usize,
    /// Radius of the ball around `c0` that arms the side test.
    pub side_radius: f64,
    /// Exit radius for the side test after passing `c0`.
    pub exit_radius: f64,
    /// Radius of the ball around `c0` whose first entry fixes `τ`.
    pub entry_radius: f64,
    pub t_max: f64,
    pub h: f64,
    pub bisection_tol: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            grid: 360,
            side_radius: 0.25,
            exit_radius: 0.5,
            entry_radius: 0.1,
            t_max: 40.0,
            h: 1.0 / 64.0,
            bisection_tol: 1e-15,
        }
    }
}

/// Side (`±1`) of the origin's unstable direction on which the orbit of `w0`
/// leaves after entering the side ball; `0` if it is still inside at `t_max`,
/// `None` if it never enters.
pub fn exit_side(p: &Params<f64>, w0: &Point, o: &ScanOptions) -> Option<f64> {
    let mut w = *w0;
    let mut entered = false;
    let mut t = 0.0;
    while t < o.t_max {
        w = rk4_step(p, &w, o.h);
        t += o.h;
        let r = norm2(&w);
        if !r.is_finite() {
            return None;
        }
        if !entered {
            entered = r < o.side_radius;
        } else if r > o.exit_radius {
            return Some(w[0].signum());
        }
    }
    entered.then_some(0.0)
}

/// First time the orbit of `w0` enters `|w − center| ≤ radius`.
pub fn first_entry_time(p: &Params<f64>, w0: &Point, center: &Point, radius: f64, t_max: f64, h: f64) -> Option<f64> {
    let mut w = *w0;
    let mut t = 0.0;
    while t < t_max {
        let d = [w[0] - center[0], w[1] - center[1], w[2] - center[2]];
        if norm2(&d) <= radius {
            return Some(t);
        }
        w = rk4_step(p, &w, h);
        t += h;
    }
    None
}

/// A grid crossing of the exit side refined by bisection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaCandidate {
    pub alpha: f64,
    /// First entry into the `entry_radius` ball around `c0`, if any.
    pub entry_time: Option<f64>,
}

/// Every `α ∈ [0, 2π)` on the grid where the exit side flips, refined by bisection.
pub fn scan_alpha(cert: &ManifoldCertificate, p: &Params<f64>, o: &ScanOptions) -> Vec<AlphaCandidate> {
    let side = |a: f64| exit_side(p, &unstable_point(cert, a), o);
    let grid: Vec<(f64, Option<f64>)> = (0..=o.grid)
        .map(|j| {
            let a = TAU * j as f64 / o.grid as f64;
            (a, side(a))
        })
        .collect();
    let mut out = Vec::new();
    for w in grid.windows(2) {
        let ((mut lo, slo), (mut hi, shi)) = (w[0], w[1]);
        let (Some(slo), Some(shi)) = (slo, shi) else {
            continue;
        };
        if slo == 0.0 {
            hi = lo;
        } else if slo * shi >= 0.0 {
            continue;
        }
        while hi - lo > o.bisection_tol * TAU {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            match side(mid) {
                Some(0.0) => {
                    lo = mid;
                    hi = mid;
                }
                Some(s) if s == slo => lo = mid,
                Some(_) => hi = mid,
                None => break,
            }
        }
        let alpha = 0.5 * (lo + hi);
        let entry_time = first_entry_time(p, &unstable_point(cert, alpha), &[0.0; 3], o.entry_radius, o.t_max, o.h);
        out.push(AlphaCandidate { alpha, entry_time });
    }
    out
}

/// The candidate reaching the entry ball first, with `τ` its entry time rounded
/// up to an integer.
pub fn choose_alpha_tau(cands: &[AlphaCandidate]) -> Result<(f64, f64)> {
    cands
        .iter()
        .filter_map(|c| c.entry_time.map(|t| (c.alpha, t)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(a, t)| (a, t.ceil()))
        .ok_or_else(|| Error::Guess("no admissible α₀/τ within the scan bounds".into()))
}

/// Chebyshev–Lobatto nodes `s_j = cos(π j / K)`, `j = 0..=K`.
pub fn lobatto_nodes(k: usize) -> Vec<f64> {
    (0..=k).map(|j| (PI * j as f64 / k as f64).cos()).collect()
}

/// Interpolant through values at the Lobatto nodes, in the `u0 + 2 Σ u_k T_k` convention.
///
/// Plain `O(K²)` type-I cosine transform.
pub fn cheb_fit(values: &[f64]) -> ChebSeq<f64> {
    let k = values.len() - 1;
    let kf = k as f64;
    let coeffs = (0..=k)
        .map(|m| {
            let mut acc = 0.0;
            for (j, v) in values.iter().enumerate() {
                let w = if j == 0 || j == k { 0.5 } else { 1.0 };
                acc += w * v * (PI * (j * m) as f64 / kf).cos();
            }
            let a = 2.0 / kf * acc;
            if m == k {
                a / 4.0
            } else {
                a / 2.0
            }
        })
        .collect::<Vec<_>>();
    ChebSeq::from_coeffs(coeffs)
}

/// Least-squares `θ` with `Q̄(θ) ≈ target`, projected onto `|θ_j| ≤ bound`.
pub fn fit_theta(q: &ManifoldCertificate, target: &Point, bound: f64) -> Result<[f64; 2]> {
    let mut th = [0.0, 0.0];
    for _ in 0..60 {
        let val = stable_point(q, th);
        let res: Vec<f64> = (0..3).map(|i| val[i] - target[i]).collect();
        let jac = stable_jacobian(q, th);
        let jtj = Mat::from_fn(2, 2, |a, b| (0..3).map(|i| jac[a][i] * jac[b][i]).sum());
        let jtr: Vec<f64> = (0..2).map(|a| (0..3).map(|i| jac[a][i] * res[i]).sum()).collect();
        let step = Lu::factor(&jtj)?.solve(&jtr)?;
        let next = [
            (th[0] - step[0]).clamp(-bound, bound),
            (th[1] - step[1]).clamp(-bound, bound),
        ];
        let moved = (next[0] - th[0]).abs() + (next[1] - th[1]).abs();
        th = next;
        if moved < 1e-15 {
            break;
        }
    }
    Ok(th)
}

/// Float initial guess `(ū, α, θ)` for the boundary-value problem.
#[derive(Clone, Debug)]
pub struct OrbitGuess {
    pub u: VecSeq3<ChebSeq<f64>>,
    pub alpha: f64,
    pub theta: [f64; 2],
    /// `|Q̄(θ) − w(τ)|` after the least-squares fit.
    pub endpoint_residual: f64,
}

/// Integrate from `P̄(γ(α₀))`, sample at Lobatto nodes of `t(s) = τ (s + 1) / 2`,
/// fit Chebyshev coefficients and the stable-side coordinates.
pub fn generate_initial_guess(
    pcert: &ManifoldCertificate,
    qcert: &ManifoldCertificate,
    p: &Params<f64>,
    alpha0: f64,
    tau: f64,
    k: usize,
    max_endpoint_distance: f64,
) -> Result<OrbitGuess> {
    let h_max = tau / 4096.0;
    let nodes = lobatto_nodes(k);
    let mut samples = vec![[0.0; 3]; k + 1];
    let mut w = unstable_point(pcert, alpha0);
    let mut t = 0.0;
    for j in (0..=k).rev() {
        let tj = tau * (nodes[j] + 1.0) / 2.0;
        w = flow(p, &w, tj - t, h_max);
        t = tj;
        samples[j] = w;
    }
    let end = samples[0];
    let theta = fit_theta(qcert, &end, 0.9)?;
    let q = stable_point(qcert, theta);
    let endpoint_residual = norm2(&[q[0] - end[0], q[1] - end[1], q[2] - end[2]]);
    if endpoint_residual > max_endpoint_distance {
        return Err(Error::Guess(format!(
            "orbit endpoint is {endpoint_residual:e} from the stable-manifold chart; increase τ or adjust α₀"
        )));
    }
    let u = std::array::from_fn(|i| {
        let vals: Vec<f64> = samples.iter().map(|s| s[i]).collect();
        cheb_fit(&vals)
    });
    Ok(OrbitGuess {
        u,
        alpha: alpha0,
        theta,
        endpoint_residual,
    })
}
