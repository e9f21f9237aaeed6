use proptest::prelude::*;
use radii::interval::Interval;
use radii::linop::{make_tail_extended, weighted_opnorm, Layout, Mat, WeightProfile};
use radii::model::{self, Params};
use radii::rpa::{interval_of_existence, newton, NewtonOptions};
use radii::seqspace::{ChebSeq, Taylor2Seq, VecSeq3};

fn matrix(n: usize) -> impl Strategy<Value = Mat<f64>> {
    prop::collection::vec(-2.0f64..2.0, n * n).prop_map(move |v| Mat::from_vec(n, n, v))
}

fn profile() -> impl Strategy<Value = WeightProfile> {
    (1.0f64..1.5).prop_map(|mu| WeightProfile::cheb(5, Interval::point(mu)))
}

fn weighted(x: &[Interval], w: &WeightProfile) -> Interval {
    x.iter().enumerate().fold(Interval::ZERO, |acc, (i, v)| acc + v.abs() * w.get(i))
}

fn interval_matvec(m: &Mat<Interval>, x: &[Interval]) -> Vec<Interval> {
    (0..m.rows())
        .map(|i| (0..m.cols()).fold(Interval::ZERO, |acc, j| acc + m.get(i, j) * x[j]))
        .collect()
}

proptest! {
    #[test]
    fn induced_norm_bounds_images(m in matrix(6), x in prop::collection::vec(-1.0f64..1.0, 6), w in profile()) {
        let mi = m.map(Interval::point);
        let xi: Vec<Interval> = x.iter().copied().map(Interval::point).collect();
        let lhs = weighted(&interval_matvec(&mi, &xi), &w);
        let rhs = weighted_opnorm(&mi, &w, &w) * weighted(&xi, &w);
        prop_assert!(lhs.lo() <= rhs.hi());
    }

    #[test]
    fn opnorm_is_the_sup_over_basis_vectors(m in matrix(6), w in profile()) {
        let mi = m.map(Interval::point);
        let norm = weighted_opnorm(&mi, &w, &w);
        let mut best = 0.0f64;
        for l in 0..6 {
            let col: Vec<Interval> = (0..6).map(|i| mi.get(i, l)).collect();
            let v = weighted(&col, &w).checked_div(w.get(l)).unwrap();
            prop_assert!(v.lo() <= norm.hi());
            best = best.max(v.mid());
        }
        prop_assert!((norm.mid() - best).abs() <= 1e-13 * best.max(1.0));
    }

    #[test]
    fn tail_extension_acts_by_blocks(
        a in matrix(3 * 4 + 2),
        u in prop::collection::vec(-1.0f64..1.0, 3 * 9),
        s in prop::collection::vec(-1.0f64..1.0, 2),
    ) {
        let k = 3;
        let op = make_tail_extended(a.clone(), Layout::Cheb3Scalars { k, scalars: 2 }).unwrap();
        let seq: VecSeq3<ChebSeq<f64>> = std::array::from_fn(|c| ChebSeq::from_coeffs(u[c * 9..(c + 1) * 9].to_vec()));
        let (out, out_s) = op.apply_cheb3(&seq, &s, |v| v).unwrap();
        let mut x: Vec<f64> = Vec::new();
        for c in &seq {
            x.extend((0..=k).map(|i| c.get(i)));
        }
        x.extend(&s);
        let head = a.matvec(&x).unwrap();
        for c in 0..3 {
            for i in 0..=8 {
                let want = if i <= k { head[c * (k + 1) + i] } else { seq[c].get(i) };
                prop_assert_eq!(out[c].get(i), want);
            }
        }
        prop_assert_eq!(out_s, head[3 * (k + 1)..].to_vec());
    }

    #[test]
    fn existence_gate_is_monotone(y in 0.0f64..1.0, dy in 0.0f64..0.5, z in 0.0f64..1.2, dz in 0.0f64..0.5, r in 0.01f64..10.0) {
        let wide = interval_of_existence(Interval::hull_of(y, y + dy), Interval::hull_of(z, z + dz), r);
        let narrow = interval_of_existence(Interval::point(y + dy / 2.0), Interval::point(z + dz / 2.0), r);
        prop_assert!(!wide.success || narrow.success);
        if let Some(ri) = wide.radius() {
            // r_inf (1 − sup Z) ≥ sup Y
            let slack = Interval::point(ri) * (Interval::ONE - Interval::point(wide.z.hi()));
            prop_assert!(slack.hi() >= wide.y.hi());
            prop_assert!(ri <= r);
        }
    }

    #[test]
    fn vector_field_symmetry(x in -3.0f64..3.0, y in -3.0f64..3.0, z in -3.0f64..3.0) {
        let p = Params::<f64>::standard();
        let a = model::f(&[x, y, z], &p);
        let b = model::f(&[-x, -y, z], &p);
        prop_assert_eq!(b, [-a[0], -a[1], a[2]]);
    }

    #[test]
    fn interval_field_contains_float_field(c in prop::array::uniform3(-3.0f64..3.0), r in 0.0f64..0.1) {
        let p = Params::<Interval>::standard();
        let boxed = c.map(|v| Interval::point(v).inflate(r));
        let fi = model::f(&boxed, &p);
        let ff = model::f(&c, &p.mid());
        for i in 0..3 {
            prop_assert!(fi[i].contains(ff[i]), "{} ∌ {}", fi[i], ff[i]);
        }
    }

    #[test]
    fn field_of_order_k_sequences_has_order_2k(k in 2usize..8, v in prop::collection::vec(-1.0f64..1.0, 3 * 64)) {
        let p = Params::<f64>::standard();
        let u: VecSeq3<Taylor2Seq<f64>> =
            std::array::from_fn(|c| Taylor2Seq::from_fn(7, 7, |i, j| v[c * 64 + i * 8 + j]).project(k));
        for fc in model::f(&u, &p) {
            let (k1, k2) = fc.orders();
            prop_assert!(k1 <= 2 * k && k2 <= 2 * k);
        }
        let w: VecSeq3<ChebSeq<f64>> = std::array::from_fn(|c| ChebSeq::from_coeffs(v[c * 64..c * 64 + 64].to_vec()).project(k));
        for fc in model::f(&w, &p) {
            prop_assert!(fc.order() <= 2 * k);
        }
    }
}

#[test]
fn newton_converges_quadratically_at_c1() {
    let p = Params::<f64>::standard();
    let out = newton(
        |x: &[f64]| Ok(model::f(&[x[0], x[1], x[2]], &p).to_vec()),
        |x: &[f64]| {
            let j = model::df(&[x[0], x[1], x[2]], &p);
            Ok(Mat::from_fn(3, 3, |r, c| j[r][c]))
        },
        vec![1.0, 0.0, 1.0],
        NewtonOptions::default(),
    )
    .unwrap();
    assert!(out.success);
    let r = &out.residuals;
    for w in r.windows(2) {
        if w[1] > 1e-13 {
            assert!(w[1] / (w[0] * w[0]) < 10.0, "residuals {r:?}");
        }
    }
}
