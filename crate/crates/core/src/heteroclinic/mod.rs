//! Chebyshev boundary-value problem for an orbit from the unstable manifold of
//! one equilibrium to the stable manifold of another.

pub mod bounds;
pub mod bvp;
pub mod eval;
pub mod guess;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linop::{approx_inverse, unflatten_cheb3, Mat};
use crate::manifold::{ManifoldCertificate, Side};
use crate::model::{self, Params};
use crate::rpa::{interval_of_existence, ExistenceResult, NewtonOptions};
use crate::seqspace::{ChebSeq, VecSeq3};

pub use bounds::ConnectionBounds;
pub use bvp::HetProblem;
pub use guess::{OrbitGuess, ScanOptions};

/// Orbit stage settings; `None` for `tau` or `alpha0` means "found by scanning".
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OrbitConfig {
    pub k: usize,
    pub mu: f64,
    pub tau: Option<f64>,
    pub alpha0: Option<f64>,
    pub r_factor: f64,
    pub newton: NewtonOptions,
    pub max_endpoint_distance: f64,
    #[serde(skip)]
    pub scan: ScanOptions,
}

impl Default for OrbitConfig {
    fn default() -> Self {
        OrbitConfig {
            k: 120,
            mu: 1.05,
            tau: None,
            alpha0: None,
            r_factor: 10.0,
            newton: NewtonOptions {
                tol: 1e-12,
                max_iter: 30,
            },
            max_endpoint_distance: 0.1,
            scan: ScanOptions::default(),
        }
    }
}

/// `α₀` and `τ`, either from the config or from the scans.
pub fn resolve_alpha_tau(pcert: &ManifoldCertificate, p: &Params<f64>, cfg: &OrbitConfig) -> Result<(f64, f64)> {
    let o = &cfg.scan;
    match (cfg.alpha0, cfg.tau) {
        (Some(a), Some(t)) => Ok((a, t)),
        (Some(a), None) => {
            let w0 = guess::unstable_point(pcert, a);
            let t = guess::first_entry_time(p, &w0, &[0.0; 3], o.entry_radius, o.t_max, o.h)
                .ok_or_else(|| Error::Guess(format!("the orbit from α₀ = {a} never nears the target equilibrium")))?;
            Ok((a, t.ceil()))
        }
        (None, tau) => {
            let (a, t) = guess::choose_alpha_tau(&guess::scan_alpha(pcert, p, o))?;
            Ok((a, tau.unwrap_or(t)))
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConnectionCertificate {
    pub u_bar: VecSeq3<ChebSeq<f64>>,
    pub alpha: f64,
    pub theta: [f64; 2],
    pub tau: f64,
    pub k: usize,
    pub mu: f64,
    pub r: f64,
    pub r_big: f64,
    pub existence: ExistenceResult,
    pub bounds: ConnectionBounds,
    pub alpha0: f64,
    pub departure: String,
    pub arrival: String,
    pub newton_residual: f64,
    pub newton_iterations: usize,
    pub guess_endpoint_residual: f64,
    /// Sup over samples of `|dū/ds − (τ/2) f(ū)|`.
    pub ode_residual: f64,
    pub endpoint_consistent: bool,
    pub contraction_success: bool,
    pub injectivity_argument_note: String,
}

impl ConnectionCertificate {
    /// `ū(s)` at `s ∈ [−1, 1]`.
    pub fn point(&self, s: f64) -> [f64; 3] {
        std::array::from_fn(|i| self.u_bar[i].eval_f64(s))
    }

    /// Time along the orbit of the rescaled point `s`.
    pub fn time(&self, s: f64) -> f64 {
        self.tau * (s + 1.0) / 2.0
    }
}

/// `sup_s |dū/ds − (τ/2) f(ū)|` over `n` equispaced samples of `[−1, 1]`.
pub fn ode_residual(u: &VecSeq3<ChebSeq<f64>>, tau: f64, p: &Params<f64>, n: usize) -> f64 {
    let du: VecSeq3<ChebSeq<f64>> = std::array::from_fn(|i| u[i].derivative());
    let mut worst = 0.0f64;
    for j in 0..n {
        let s = -1.0 + 2.0 * j as f64 / (n - 1) as f64;
        let w: [f64; 3] = std::array::from_fn(|i| u[i].eval_f64(s));
        let fw = model::f(&w, p);
        for i in 0..3 {
            worst = worst.max((du[i].eval_f64(s) - 0.5 * tau * fw[i]).abs());
        }
    }
    worst
}

/// `s,t,x,y,z` rows sampled at `n` equispaced `s`, shortest round-trip formatting.
pub fn trajectory_csv(cert: &ConnectionCertificate, n: usize) -> String {
    let mut out = String::from("s,t,x,y,z\n");
    let n = n.max(2);
    for j in 0..n {
        let s = -1.0 + 2.0 * j as f64 / (n - 1) as f64;
        let [x, y, z] = cert.point(s);
        out.push_str(&format!("{s},{},{x},{y},{z}\n", cert.time(s)));
    }
    out
}

fn check_chart(cert: &ManifoldCertificate, side: Side, what: &str) -> Result<()> {
    if cert.side != side {
        return Err(Error::MissingCertificate(format!(
            "{what} needs the {side:?} manifold, got the {:?} manifold of {}",
            cert.side, cert.base
        )));
    }
    Ok(())
}

/// Certify an orbit leaving along `pcert` (unstable) and arriving along `qcert` (stable).
///
/// On success the contraction also yields transversality of the intersection.
pub fn validate_connection(
    p: &Params<Interval>,
    pcert: &ManifoldCertificate,
    qcert: &ManifoldCertificate,
    cfg: &OrbitConfig,
) -> Result<ConnectionCertificate> {
    check_chart(pcert, Side::Unstable, "departure")?;
    check_chart(qcert, Side::Stable, "arrival")?;
    if cfg.k < 2 {
        return Err(Error::Config("orbit order must be at least 2".into()));
    }
    if !(cfg.mu >= 1.0) {
        return Err(Error::Config("orbit weight mu must be at least 1".into()));
    }
    let pf = p.mid();
    let (alpha0, tau) = resolve_alpha_tau(pcert, &pf, cfg)?;
    if !(tau > 0.0) {
        return Err(Error::Config(format!("integration time must be positive, got {tau}")));
    }
    log::info!("connection: α₀ = {alpha0}, τ = {tau}, K = {}", cfg.k);
    let g = guess::generate_initial_guess(pcert, qcert, &pf, alpha0, tau, cfg.k, cfg.max_endpoint_distance)?;
    let pb = HetProblem {
        k: cfg.k,
        tau,
        params: *p,
        pcert,
        qcert,
    };
    let sol = bvp::solve_bvp(&pb, &g, cfg.newton)?;
    log::info!(
        "connection: Newton residual {:e} after {} iterations",
        sol.residual,
        sol.iterations
    );
    let a: Mat<f64> = approx_inverse(&bvp::df_het_float(&pb, &sol.x))?;
    let mu = Interval::point(cfg.mu);
    let y = bounds::y_het(&pb, &sol.x, &a, mu)?;
    let r_big = cfg.r_factor * y.hi();
    let mut b = bounds::z_het(&pb, &sol.x, &a, mu, r_big)?;
    b.y = y;
    let existence = interval_of_existence(y, b.z(r_big), r_big);
    log::info!(
        "connection: Y = {y}, Z0 = {} (finite {}, tail {}), Z = {}",
        b.z0(),
        b.z0_finite,
        b.tail,
        existence.z
    );
    let Some(r) = existence.radius() else {
        return Err(Error::Proof(format!(
            "connection: Y = {y}, Z = {} (finite {}, tail {}, ‖A‖ {})",
            existence.z, b.z0_finite, b.tail, b.a_norm
        )));
    };
    let (u, s) = unflatten_cheb3(&sol.x, cfg.k);
    let theta = [s[1], s[2]];
    if theta.iter().any(|t| !(t.abs() + r < 1.0)) {
        return Err(Error::Proof(format!(
            "certified θ = {theta:?} ± {r:e} leaves the unit disk"
        )));
    }
    let (qv, _) = bvp::stable_rigorous(qcert, theta.map(Interval::point))?;
    let endpoint_consistent = (0..3).all(|i| {
        let end = u[i].map(Interval::point).eval_at_one().inflate(r);
        end.intersects(qv[i].inflate(r))
    });
    if !endpoint_consistent {
        return Err(Error::Proof("orbit endpoint does not meet the stable chart".into()));
    }
    Ok(ConnectionCertificate {
        ode_residual: ode_residual(&u, tau, &pf, 100),
        u_bar: u,
        alpha: s[0],
        theta,
        tau,
        k: cfg.k,
        mu: cfg.mu,
        r,
        r_big,
        existence,
        bounds: b,
        alpha0,
        departure: pcert.base.clone(),
        arrival: qcert.base.clone(),
        newton_residual: sol.residual,
        newton_iterations: sol.iterations,
        guess_endpoint_residual: g.endpoint_residual,
        endpoint_consistent,
        contraction_success: true,
        injectivity_argument_note: "A is injective since Z < 1; the contraction on the closed ball \
            gives a unique zero, and invertibility of DF there implies the manifolds intersect transversally"
            .into(),
    })
}
