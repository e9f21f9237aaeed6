//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use radii::cli::{self, PipelineConfig, RunOptions, Stage};
use radii::heteroclinic::bounds::{e_tail, lc_norm, lc_row0_tail, lc_tail};
use radii::heteroclinic::validate_connection;
use radii::interval::{ComplexInterval, Interval};
use radii::manifold::{lt_tail_bound, validate_manifold, ManifoldCertificate, Side};
use radii::model::Params;
use radii::pointproofs::{same_half_plane_margin, EigenCertificate, Stability};
use radii::seqspace::{ChebSeq, Taylor2Seq};

use common::{cubic_roots, e_brute, encloses, lc_brute, lt_brute, q, KS, MUS};

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: &str, ok: bool, what: &str, detail: String) {
        if !ok {
            self.failed += 1;
        }
        println!("[{}] {id}. {what}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

/// Distance from `z` to the rectangle `e`.
fn dist(e: ComplexInterval, z: Complex64) -> f64 {
    let d = |iv: Interval, x: f64| (iv.lo() - x).max(x - iv.hi()).max(0.0);
    d(e.re, z.re).hypot(d(e.im, z.im))
}

/// Every reference is within `tol` of a distinct certified eigenvalue.
fn matches(certs: &[EigenCertificate], refs: &[Complex64], tol: f64) -> (bool, f64) {
    let mut worst = 0.0f64;
    let mut used = vec![false; certs.len()];
    for z in refs {
        let best = certs
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, c)| (i, dist(c.eigenvalue, *z)))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((i, d)) => {
                used[i] = true;
                worst = worst.max(d);
            }
            None => return (false, f64::INFINITY),
        }
    }
    (worst <= tol, worst)
}

fn count(certs: &[EigenCertificate], real: bool, st: Stability) -> usize {
    certs.iter().filter(|c| c.is_real == real && c.stability == st).count()
}

fn manifold_line(r: &mut Report, id: &str, c: &ManifoldCertificate, t: Duration) {
    let ok = c.existence.success && c.existence.z.hi() < 1.0 && c.invariance_residual <= 1e-6 && t.as_secs_f64() < 60.0;
    r.line(
        id,
        ok,
        &format!("{:?} manifold of {}", c.side, c.base),
        format!(
            "Z = {:.4} < 1, r = {:.3e}, invariance residual {:.2e} ≤ 1e-6 (50 samples), {:.2?} < 60 s",
            c.existence.z.hi(),
            c.r,
            c.invariance_residual,
            t
        ),
    );
}

fn random_interval(rng: &mut StdRng) -> Interval {
    let a = rng.gen_range(-1.0..1.0) * 2f64.powi(rng.gen_range(-30..30));
    match rng.gen_range(0..4) {
        0 => Interval::point(a),
        k => Interval::hull_of(a, a + rng.gen::<f64>() * a.abs().max(1e-300) * 10f64.powi(-4 * k)),
    }
}

fn pick(rng: &mut StdRng, iv: Interval) -> f64 {
    (iv.lo() + rng.gen::<f64>() * (iv.hi() - iv.lo())).clamp(iv.lo(), iv.hi())
}

fn containment_violations(rng: &mut StdRng, cases: usize) -> usize {
    let mut bad = 0;
    for _ in 0..cases {
        let (a, b) = (random_interval(rng), random_interval(rng));
        let (x, y) = (pick(rng, a), pick(rng, b));
        let (qx, qy) = (q(x), q(y));
        let mut ok = encloses(a + b, &(&qx + &qy)) && encloses(a - b, &(&qx - &qy)) && encloses(a * b, &(&qx * &qy));
        if !b.contains_zero() {
            ok &= encloses(a.checked_div(b).unwrap(), &(&qx / &qy));
        }
        bad += usize::from(!ok);
    }
    bad
}

fn rand_cheb(rng: &mut StdRng) -> ChebSeq<Interval> {
    let n = rng.gen_range(1..=25);
    ChebSeq::from_coeffs((0..n).map(|_| Interval::point(rng.gen_range(-1.0..1.0))).collect())
}

fn rand_taylor(rng: &mut StdRng) -> Taylor2Seq<Interval> {
    let (k1, k2) = (rng.gen_range(0..7), rng.gen_range(0..7));
    Taylor2Seq::from_fn(k1, k2, |_, _| Interval::point(rng.gen_range(-1.0..1.0)))
}

fn main() {
    let mut r = Report { failed: 0 };
    let p = Params::<Interval>::standard();
    let cfg = PipelineConfig::default();

    // 1
    let (eq, t_eq) = timed(|| cli::run_equilibria(&p));
    let eq = eq.expect("equilibria");
    let c1 = eq.certificates.iter().find(|c| c.label == "c1").unwrap();
    let sqrt_b = Interval::ratio(9, 20).unwrap().sqrt().unwrap();
    let contains = c1.enclosure[0].intersects(sqrt_b)
        && c1.enclosure[0].contains(0.45f64.sqrt())
        && c1.enclosure[1].contains(0.0)
        && c1.enclosure[2].contains(1.0);
    r.line(
        "1",
        c1.r <= 1e-14 && contains && t_eq.as_secs_f64() < 1.0,
        "equilibrium c1",
        format!("r = {:.4e} ≤ 1e-14, encloses (√(9/20), 0, 1): {contains}, {t_eq:.2?} < 1 s", c1.r),
    );

    // 2
    let (eig, t_eig) = timed(|| cli::run_eigen(&p, &eq));
    let eig = eig.expect("eigenpairs");
    let entry = |l: &str| eig.spectra.iter().find(|s| s.equilibrium == l).unwrap();
    let sp = |l: &str| entry(l).certificates.clone();
    let (s0, s1) = (sp("c0"), sp("c1"));
    let (a, b) = (0.75, 0.45);
    // det(λ − Df) at c0 factors as (λ + b)(λ² + a λ − 1); at c1 it is λ³ + (a+b)λ² + ab λ + 2b.
    let d0 = (a * a + 4.0f64).sqrt();
    let refs0 = [Complex64::new(-b, 0.0), Complex64::new((-a + d0) / 2.0, 0.0), Complex64::new((-a - d0) / 2.0, 0.0)];
    let refs1 = cubic_roots([2.0 * b, a * b, a + b], -3.0, -1.0);
    let signs = count(&s0, true, Stability::Stable) == 2
        && count(&s0, true, Stability::Unstable) == 1
        && count(&s1, true, Stability::Stable) == 1
        && count(&s1, false, Stability::Unstable) == 2
        && s0.iter().chain(&s1).all(|c| !c.re_lambda().contains_zero());
    let (m0, w0) = matches(&s0, &refs0, 1e-6);
    let (m1, w1) = matches(&s1, &refs1, 1e-6);
    let printed0 = [-0.45, 0.693, -1.443].map(|x| Complex64::new(x, 0.0));
    let printed1 = [Complex64::new(-1.412, 0.0), Complex64::new(0.106, 0.791), Complex64::new(0.106, -0.791)];
    let (p0, _) = matches(&s0, &printed0, 5e-4);
    let (p1, _) = matches(&s1, &printed1, 5e-4);
    r.line(
        "2",
        signs && m0 && m1 && p0 && p1 && t_eig.as_secs_f64() < 1.0,
        "eigen-structure",
        format!(
            "{}; {}; references within {:.1e} / {:.1e} ≤ 1e-6, three-decimal values agree: {}, {t_eig:.2?} < 1 s",
            entry("c0").summary,
            entry("c1").summary,
            w0,
            w1,
            p0 && p1
        ),
    );

    // 3
    let (st, un) = cli::manifold_pairs(&eig).expect("manifold eigenpairs");
    let find = |l: &str| eq.certificates.iter().find(|c| c.label == l).unwrap();
    let (ws, t_ws) = timed(|| validate_manifold(&p, find("c0"), &st[0], &st[1], Side::Stable, &cfg.manifold_config(false)));
    let (wu, t_wu) = timed(|| validate_manifold(&p, find("c1"), &un[0], &un[1], Side::Unstable, &cfg.manifold_config(true)));
    let (ws, wu) = (ws.expect("stable manifold"), wu.expect("unstable manifold"));
    manifold_line(&mut r, "3a", &ws, t_ws);
    manifold_line(&mut r, "3b", &wu, t_wu);

    // 4 and 7
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let run_all = |d: &tempfile::TempDir| {
        let opts = RunOptions {
            out: Some(d.path().to_path_buf()),
            ..RunOptions::default()
        };
        timed(|| cli::run_with_config(Stage::All, cfg.clone(), &opts))
    };
    let (first, t_all) = run_all(&dirs[0]);
    let (conn, t_conn) = timed(|| validate_connection(&p, &wu, &ws, &cfg.orbit_config()));
    match (&first, conn) {
        (Ok(_), Ok(c)) => {
            let domain = c.theta.iter().all(|t| t.abs() + c.r < 1.0);
            let ok = c.existence.success && c.existence.z.hi() < 1.0 && c.endpoint_consistent && domain && t_all.as_secs_f64() < 600.0;
            r.line(
                "4",
                ok,
                "connection c1 → c0",
                format!(
                    "Z = {:.4} < 1, r = {:.3e}, endpoint consistent: {}, max |θ| + r = {:.4} < 1, connection {t_conn:.2?}, pipeline {t_all:.2?} < 10 min",
                    c.existence.z.hi(),
                    c.r,
                    c.endpoint_consistent,
                    c.theta[0].abs().max(c.theta[1].abs()) + c.r
                ),
            );
        }
        (a, b) => r.line("4", false, "connection c1 → c0", format!("pipeline {:?}, connection {:?}", a.as_ref().err(), b.err())),
    }

    // 5
    let mut worst = 0.0f64;
    let mut never_above = true;
    for mu in MUS {
        let m = Interval::point(mu);
        let mut cmp = |brute: Interval, closed: Interval| {
            worst = worst.max((brute.mid() - closed.mid()).abs() / closed.mid());
            never_above &= brute.lo() <= closed.hi();
        };
        cmp(lc_brute(mu, 0..common::N - 1, |_| true), lc_norm(m));
        for k in KS {
            cmp(lc_brute(mu, k + 2..common::N - 1, |r| r == 0), lc_row0_tail(k, m).unwrap());
            cmp(lc_brute(mu, k + 2..common::N - 1, |r| r > k), lc_tail(k, m).unwrap());
        }
    }
    r.line(
        "5a",
        worst <= 1e-10 && never_above,
        "L_C tail closed forms vs 500-dimensional brute force",
        format!("max relative error {worst:.2e} ≤ 1e-10, brute force never above closed form: {never_above}"),
    );
    let mut lt_ok = true;
    let mut lt_ratio = f64::INFINITY;
    for c in [&ws, &wu] {
        let m = same_half_plane_margin(c.lambda[0], c.lambda[1]).unwrap();
        for k in [2usize, 5, 10, 25, 50, 100] {
            let closed = lt_tail_bound(k, m).unwrap().hi();
            let brute = lt_brute(k, c.lambda[0].mid(), c.lambda[1].mid());
            lt_ok &= closed >= brute;
            lt_ratio = lt_ratio.min(closed / brute);
        }
    }
    r.line(
        "5b",
        lt_ok,
        "Taylor tail bound vs brute force over (K, K+200]",
        format!("closed form ≥ brute force on both manifolds, min ratio {lt_ratio:.6}"),
    );
    let mut e_worst = 0.0f64;
    let mut e_ok = true;
    for mu in MUS {
        for k in KS {
            let (b, c) = (e_brute(k, mu), e_tail(k, Interval::point(mu)).unwrap());
            e_worst = e_worst.max((b.mid() - c.mid()).abs() / c.mid());
            e_ok &= b.lo() <= c.hi();
        }
    }
    r.line(
        "5c",
        e_ok && e_worst <= 1e-10,
        "evaluation-row tail vs brute force",
        format!("max relative error {e_worst:.2e}"),
    );

    // 6
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let bad = containment_violations(&mut rng, 100_000);
    r.line("6a", bad == 0, "interval containment fuzz", format!("{bad} violations in 100000 cases"));
    let mut sub_bad = 0;
    for _ in 0..1000 {
        let nu = Interval::point(rng.gen_range(1.0..1.6));
        let (u, w) = (rand_taylor(&mut rng), rand_taylor(&mut rng));
        sub_bad += usize::from(u.cauchy(&w).norm(nu).lo() > (u.norm(nu) * w.norm(nu)).hi());
        let (u, w) = (rand_cheb(&mut rng), rand_cheb(&mut rng));
        sub_bad += usize::from(u.convolve(&w).norm(nu).lo() > (u.norm(nu) * w.norm(nu)).hi());
    }
    r.line("6b", sub_bad == 0, "Banach algebra submultiplicativity", format!("{sub_bad} violations in 1000 pairs per product"));
    let mut pw_bad = 0;
    for _ in 0..100 {
        let (u, w) = (rand_cheb(&mut rng), rand_cheb(&mut rng));
        let (tu, tw) = (rand_taylor(&mut rng).map(ComplexInterval::real), rand_taylor(&mut rng).map(ComplexInterval::real));
        let (uw, tuw) = (u.convolve(&w), tu.cauchy(&tw));
        for _ in 0..20 {
            let s = Interval::point(rng.gen_range(-1.0..=1.0));
            pw_bad += usize::from(!uw.eval(s).unwrap().intersects(u.eval(s).unwrap() * w.eval(s).unwrap()));
            let t1 = ComplexInterval::point(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let t2 = ComplexInterval::point(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            pw_bad += usize::from(!tuw.eval(t1, t2).intersects(tu.eval(t1, t2) * tw.eval(t1, t2)));
        }
    }
    r.line("6c", pw_bad == 0, "products vs pointwise evaluation", format!("{pw_bad} mismatches over 100 sequences × 20 points"));
    let mut lc_bad = 0;
    for _ in 0..1000 {
        let u = rand_cheb(&mut rng);
        let v = u.apply_lc();
        let back = v.derivative();
        lc_bad += usize::from(!(0..=u.order()).all(|k| back.get(k).contains(u.get(k).mid())));
        lc_bad += usize::from(!v.eval(Interval::point(-1.0)).unwrap().contains_zero());
    }
    r.line(
        "6d",
        lc_bad == 0,
        "L_C left inverse and vanishing at −1",
        format!("{lc_bad} failures in 1000 sequences"),
    );

    // 7
    let (second, _) = run_all(&dirs[1]);
    let read = |d: &tempfile::TempDir| std::fs::read(d.path().join(&cfg.output.report)).unwrap_or_default();
    let (b1, b2) = (read(&dirs[0]), read(&dirs[1]));
    let same = first.is_ok() && second.is_ok() && !b1.is_empty() && b1 == b2;
    r.line("7", same, "determinism", format!("two `all` runs give identical reports ({} bytes): {same}", b1.len()));

    println!("{} criteria failed", r.failed);
    if r.failed > 0 {
        std::process::exit(1);
    }
}
