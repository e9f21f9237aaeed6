//! Closed-form tail norms against brute-force truncations.

use num_complex::Complex64;
use radii::heteroclinic::bounds::{e_tail, lc_norm, lc_row0_tail, lc_tail};
use radii::interval::Interval;
use radii::manifold::lt_tail_bound;
use radii::model::Params;
use radii::pointproofs::{same_half_plane_margin, select, validate_equilibrium, validate_spectrum, Stability};
use radii::rpa::NewtonOptions;
use radii::seqspace::ChebSeq;

mod common;

use common::{e_brute, lc_brute as brute, lc_column, lt_brute, KS, MUS, N};

fn check(name: &str, brute: Interval, closed: Interval) {
    let rel = (brute.mid() - closed.mid()).abs() / closed.mid();
    assert!(rel <= 1e-10, "{name}: brute {brute} vs {closed}, rel {rel:e}");
    assert!(brute.lo() <= closed.hi(), "{name}: brute {brute} exceeds {closed}");
}

#[test]
fn oracle_matrix_matches_the_implementation() {
    for l in 0..40 {
        let mut e = vec![0.0; l + 1];
        e[l] = 1.0;
        let v = ChebSeq::from_coeffs(e).apply_lc();
        let mut dense = vec![Interval::ZERO; l + 2];
        for (k, c) in lc_column(l) {
            dense[k] += c;
        }
        for (k, d) in dense.iter().enumerate() {
            assert!(d.contains(v.get(k)) || (v.get(k) - d.mid()).abs() <= 1e-16, "column {l}, row {k}");
        }
    }
}

#[test]
fn integration_operator_norm() {
    for mu in MUS {
        let b = brute(mu, 0..N - 1, |_| true);
        check(&format!("‖L_C‖ at μ = {mu}"), b, lc_norm(Interval::point(mu)));
    }
}

#[test]
fn row_zero_tail() {
    for mu in MUS {
        for k in KS {
            let b = brute(mu, k + 2..N - 1, |r| r == 0);
            check(&format!("row 0, μ = {mu}, K = {k}"), b, lc_row0_tail(k, Interval::point(mu)).unwrap());
        }
    }
}

#[test]
fn high_row_tail() {
    for mu in MUS {
        for k in KS {
            let b = brute(mu, k + 2..N - 1, |r| r > k);
            check(&format!("rows > K, μ = {mu}, K = {k}"), b, lc_tail(k, Interval::point(mu)).unwrap());
        }
    }
}

#[test]
fn evaluation_row_tail() {
    for mu in MUS {
        for k in KS {
            let b = e_brute(k, mu);
            check(&format!("ℰ tail, μ = {mu}, K = {k}"), b, e_tail(k, Interval::point(mu)).unwrap());
        }
    }
}

fn manifold_pairs() -> Vec<[radii::interval::ComplexInterval; 2]> {
    let p = Params::<Interval>::standard();
    let o = NewtonOptions::default();
    let c0 = validate_equilibrium("c0", &p, [0.0; 3], 10.0, o).unwrap();
    let c1 = validate_equilibrium("c1", &p, [1.0, 0.0, 1.0], 10.0, o).unwrap();
    let s = select(&validate_spectrum(&p, &c0, 10.0, o).unwrap(), Stability::Stable);
    let u = select(&validate_spectrum(&p, &c1, 10.0, o).unwrap(), Stability::Unstable);
    vec![[s[0].eigenvalue, s[1].eigenvalue], [u[0].eigenvalue, u[1].eigenvalue]]
}

#[test]
fn taylor_tail_bound_dominates_brute_force() {
    for lam in manifold_pairs() {
        let m = same_half_plane_margin(lam[0], lam[1]).unwrap();
        let (l1, l2): (Complex64, Complex64) = (lam[0].mid(), lam[1].mid());
        for k in [2usize, 5, 10, 25, 50] {
            let closed = lt_tail_bound(k, m).unwrap();
            let sup = lt_brute(k, l1, l2);
            assert!(closed.hi() >= sup, "K = {k}: closed {closed} < brute {sup:e}");
        }
    }
}

#[test]
fn non_resonance_margin() {
    for lam in manifold_pairs() {
        let m = same_half_plane_margin(lam[0], lam[1]).unwrap();
        assert!(m.lo() > 0.0);
        for n in 2..=60usize {
            for k1 in 0..=n {
                let s = lam[0].scale(Interval::exact(k1 as i64)) + lam[1].scale(Interval::exact((n - k1) as i64));
                assert!(s.abs().lo() >= Interval::exact(n as i64).lo() * m.hi() * (1.0 - 1e-12));
            }
        }
    }
}
