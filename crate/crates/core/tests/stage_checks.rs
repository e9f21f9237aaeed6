//! Checks on the intermediate objects of each proof stage.

use std::sync::OnceLock;

use radii::cli::{self, ManifoldsFile, PipelineConfig};
use radii::heteroclinic::bvp::{df_het_float, f_het_float, lc_mult_column, unstable_rigorous};
use radii::heteroclinic::eval::{derivative_factor, rigorous_eval_p};
use radii::heteroclinic::{self, guess, ConnectionCertificate, HetProblem};
use radii::interval::{unit_circle, ComplexInterval, Interval};
use radii::linop::{approx_inverse, flatten_cheb3, Mat};
use radii::manifold::ManifoldCertificate;
use radii::model::{self, Params};
use radii::pointproofs::Stability;
use radii::seqspace::{ChebSeq, VecSeq3};

struct Stages {
    p: Params<Interval>,
    eq: cli::EquilibriaFile,
    eig: cli::EigenFile,
    m: ManifoldsFile,
    conn: ConnectionCertificate,
    alpha0: f64,
    tau: f64,
}

fn stages() -> &'static Stages {
    static S: OnceLock<Stages> = OnceLock::new();
    S.get_or_init(|| {
        let cfg = PipelineConfig::default();
        let p = Params::<Interval>::standard();
        let eq = cli::run_equilibria(&p).unwrap();
        let eig = cli::run_eigen(&p, &eq).unwrap();
        let m = cli::run_manifolds(&p, &cfg, &eq, &eig).unwrap();
        let conn = cli::run_connection(&p, &cfg, &m).unwrap().certificate;
        let (alpha0, tau) = (conn.alpha0, conn.tau);
        Stages { p, eq, eig, m, conn, alpha0, tau }
    })
}

fn problem(s: &Stages) -> HetProblem<'_> {
    HetProblem {
        k: s.conn.k,
        tau: s.tau,
        params: s.p,
        pcert: &s.m.unstable,
        qcert: &s.m.stable,
    }
}

fn orbit_guess(s: &Stages) -> guess::OrbitGuess {
    let pf = s.p.mid();
    guess::generate_initial_guess(&s.m.unstable, &s.m.stable, &pf, s.alpha0, s.tau, s.conn.k, 0.1).unwrap()
}

fn guess_vector(s: &Stages) -> Vec<f64> {
    let g = orbit_guess(s);
    flatten_cheb3(&g.u, &[g.alpha, g.theta[0], g.theta[1]], s.conn.k)
}

fn solution_vector(s: &Stages) -> Vec<f64> {
    let c = &s.conn;
    flatten_cheb3(&c.u_bar, &[c.alpha, c.theta[0], c.theta[1]], c.k)
}

#[test]
fn equilibria_have_certified_zero_residual() {
    let s = stages();
    for c in &s.eq.certificates {
        let fx = model::f(&c.ball(), &s.p);
        assert!(fx.iter().all(|v| v.contains_zero()), "{}: {fx:?}", c.label);
    }
}

#[test]
fn eigenpairs_have_certified_zero_residual_and_definite_sign() {
    let s = stages();
    for sp in &s.eig.spectra {
        let eq = s.eq.certificates.iter().find(|c| c.label == sp.equilibrium).unwrap();
        let j = model::df(&eq.ball(), &s.p);
        for e in &sp.certificates {
            assert_ne!(e.stability, Stability::Indefinite);
            assert!(!e.re_lambda().contains_zero());
            for r in 0..3 {
                let mut acc = -(e.eigenvalue * e.eigenvector[r]);
                for c in 0..3 {
                    acc += e.eigenvector[c].scale(j[r][c]);
                }
                assert!(acc.contains_zero(), "{}: row {r} residual {acc}", sp.equilibrium);
            }
        }
    }
}

fn check_low_orders(c: &ManifoldCertificate, eq: &radii::pointproofs::EquilibriumCertificate) {
    let nu = Interval::point(c.nu);
    for i in 0..3 {
        let p00 = c.p_bar[i].get(0, 0);
        assert!(eq.enclosure[i].inflate(c.r).contains(p00.re), "{}: P_00", c.base);
        for (t, (a, b)) in [(1usize, 0usize), (0, 1)].into_iter().enumerate() {
            let want = c.eigenvectors[t][i].scale(Interval::point(c.scale));
            let slack = Interval::point(c.r).checked_div(nu).unwrap().hi();
            let got = c.p_bar[i].get(a, b);
            assert!(want.inflate(slack).contains(got), "{}: order-one coefficient {got}", c.base);
        }
    }
}

#[test]
fn manifold_low_orders_lie_in_point_enclosures() {
    let s = stages();
    let find = |l: &str| s.eq.certificates.iter().find(|c| c.label == l).unwrap();
    check_low_orders(&s.m.stable, find("c0"));
    check_low_orders(&s.m.unstable, find("c1"));
}

#[test]
fn unstable_coefficients_are_conjugation_symmetric() {
    let c = &stages().m.unstable;
    for comp in &c.p_bar {
        let (k1, k2) = comp.orders();
        for i in 0..=k1.min(k2) {
            for j in 0..=k1.min(k2) {
                assert_eq!(comp.get(i, j), comp.get(j, i).conj(), "({i}, {j})");
            }
        }
    }
}

#[test]
fn manifold_z_splits_into_z0_and_z1() {
    let s = stages();
    for c in [&s.m.stable, &s.m.unstable] {
        let b = &c.bounds;
        assert_eq!(b.z1(0.0), Interval::ZERO);
        assert_eq!(b.z(0.0), b.z0());
        assert_eq!(b.z(c.r_big), b.z0() + b.z1(c.r_big));
        assert!(c.existence.z.is_subset(b.z(c.r_big)) || c.existence.z == b.z(c.r_big));
        assert!(c.invariance_residual <= 1e-6);
    }
}

#[test]
fn boundary_value_jacobian_matches_finite_differences() {
    let s = stages();
    let pb = problem(s);
    let x = guess_vector(s);
    let d = df_het_float(&pb, &x);
    let h = 1e-6;
    let mut worst = 0.0f64;
    for col in 0..x.len() {
        let (mut xp, mut xm) = (x.clone(), x.clone());
        xp[col] += h;
        xm[col] -= h;
        let (fp, fm) = (f_het_float(&pb, &xp), f_het_float(&pb, &xm));
        for row in 0..x.len() {
            let fd = (fp[row] - fm[row]) / (2.0 * h);
            worst = worst.max((fd - d.get(row, col)).abs() / (1.0 + d.get(row, col).abs()));
        }
    }
    assert!(worst <= 1e-6, "worst finite-difference mismatch {worst:e}");
}

#[test]
fn approximate_inverse_is_accurate() {
    let s = stages();
    let pb = problem(s);
    let d = df_het_float(&pb, &solution_vector(s));
    let a = approx_inverse(&d).unwrap();
    let defect = a.mul_naive(&d).unwrap().sub_mat(&Mat::identity(d.rows()));
    let norm = defect.norm1_float();
    assert!(norm <= 1e-9, "‖A DF − I‖₁ = {norm:e}");
}

#[test]
fn initial_guess_meets_the_stable_chart_and_decays() {
    let s = stages();
    let g = orbit_guess(s);
    assert!(g.endpoint_residual <= 1e-6, "endpoint residual {:e}", g.endpoint_residual);
    let k = s.conn.k;
    for u in &g.u {
        let top = u.coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
        assert!(u.get(k).abs() / top <= 1e-10, "|u_K| / max |u_k| = {:e}", u.get(k).abs() / top);
    }
}

#[test]
fn derivative_widening_example() {
    let f = derivative_factor(1.0, 2.0).unwrap();
    let widened = 1e-10 * f;
    let expect = 1e-10 / (std::f64::consts::E * std::f64::consts::LN_2);
    assert!((widened - expect).abs() <= 1e-22);
    assert!((widened - 5.31e-11).abs() < 5e-14);
}

#[test]
fn unstable_chart_is_real_on_the_circle() {
    let c = &stages().m.unstable;
    for j in 0..32 {
        let a = Interval::point(std::f64::consts::TAU * j as f64 / 32.0).inflate(1e-3);
        let (z, zc) = unit_circle(a);
        let ev = rigorous_eval_p(c, [z, zc]).unwrap();
        for v in ev.value {
            assert!(v.im.contains_zero(), "imaginary part {v} at α = {a}");
        }
        let (val, d) = unstable_rigorous(c, a).unwrap();
        let mid: ComplexInterval = ev.value[0];
        assert!(val[0].intersects(mid.re));
        assert!(d.iter().all(|x| x.width().is_finite()));
    }
}

#[test]
fn sequence_block_bandwidth() {
    let s = stages();
    let (k, x) = (s.conn.k, &s.conn.u_bar);
    let ur: VecSeq3<ChebSeq<Interval>> = std::array::from_fn(|i| x[i].map(Interval::point));
    let mult = model::df_vecfield_seq(&ur, &s.p);
    for row in &mult {
        for m in row {
            for l in 0..=2 * k + 1 {
                assert!(lc_mult_column(m, l).order() <= 3 * k + 2);
            }
        }
    }
}

#[test]
fn certified_orbit_solves_the_ode() {
    let s = stages();
    let c = &s.conn;
    assert!(heteroclinic::ode_residual(&c.u_bar, c.tau, &s.p.mid(), 100) <= 1e-8);
    let start = c.point(-1.0);
    let p = guess::unstable_point(&s.m.unstable, c.alpha);
    let end = c.point(1.0);
    let q = guess::stable_point(&s.m.stable, c.theta);
    for i in 0..3 {
        assert!((start[i] - p[i]).abs() < 1e-10);
        assert!((end[i] - q[i]).abs() < 1e-10);
    }
    assert!(end.iter().map(|v| v * v).sum::<f64>().sqrt() < 0.2);
}
