//! Containment against exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use radii::interval::{unit_circle, Interval};

mod common;

use common::{encloses, q};

fn encloses_range(iv: Interval, lo: &BigRational, hi: &BigRational) -> bool {
    encloses(iv, lo) && encloses(iv, hi)
}

fn value() -> impl Strategy<Value = f64> {
    (-1.0f64..1.0, -30i32..30).prop_map(|(m, e)| m * 2f64.powi(e))
}

fn interval() -> impl Strategy<Value = Interval> {
    (value(), 0.0f64..1.0, 0u8..4).prop_map(|(a, w, kind)| match kind {
        0 => Interval::point(a),
        _ => {
            let b = a + w * a.abs().max(1e-300) * 10f64.powi(-(kind as i32) * 4);
            Interval::hull_of(a, b)
        }
    })
}

fn pick(iv: Interval, t: f64) -> f64 {
    (iv.lo() + t * (iv.hi() - iv.lo())).clamp(iv.lo(), iv.hi())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100_000, ..ProptestConfig::default() })]

    #[test]
    fn arithmetic_contains_exact_results(a in interval(), b in interval(), s in 0.0f64..=1.0, t in 0.0f64..=1.0) {
        let (x, y) = (pick(a, s), pick(b, t));
        let (qx, qy) = (q(x), q(y));
        prop_assert!(encloses(a + b, &(&qx + &qy)));
        prop_assert!(encloses(a - b, &(&qx - &qy)));
        prop_assert!(encloses(a * b, &(&qx * &qy)));
        prop_assert!(encloses(a.sqr(), &(&qx * &qx)));
        prop_assert!(encloses(a.powi(3), &(&qx * &qx * &qx)));
        prop_assert!(encloses(a.abs(), &qx.abs()));
        if !b.contains_zero() {
            let d = a.checked_div(b).unwrap();
            prop_assert!(encloses(d, &(&qx / &qy)));
        }
        let m = a.abs();
        let r = m.sqrt().unwrap();
        let qm = q(x.abs());
        // √x ∈ [lo, hi] ⟺ lo² ≤ x ≤ hi² for lo ≥ 0
        prop_assert!(r.lo() <= 0.0 || q(r.lo()) * q(r.lo()) <= qm);
        prop_assert!(qm <= q(r.hi()) * q(r.hi()));
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `[S − e, S + e]` containing `Σ c_n x^n / n!` for the given coefficient pattern.
fn series(x: &BigRational, coeff: impl Fn(u32) -> i32, terms: u32) -> (BigRational, BigRational) {
    let mut s = BigRational::zero();
    let mut p = BigRational::one();
    for n in 0..terms {
        let c = coeff(n);
        if c != 0 {
            s += &p * BigRational::from_integer(BigInt::from(c)) / BigRational::from_integer(factorial(n));
        }
        p *= x;
    }
    // |x| ≤ 2: the remainder is below 2 |x|^N / N!
    let e = p.abs() * BigRational::from_integer(BigInt::from(2)) / BigRational::from_integer(factorial(terms));
    (&s - &e, &s + &e)
}

fn exp_range(x: &BigRational) -> (BigRational, BigRational) {
    series(x, |_| 1, 30)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 2_000, ..ProptestConfig::default() })]

    #[test]
    fn elementary_functions_contain_series_enclosures(lo in -2.0f64..2.0, w in 0.0f64..0.1, t in 0.0f64..=1.0) {
        let a = Interval::hull_of(lo, (lo + w).min(2.0));
        let x = pick(a, t);
        let qx = q(x);
        let (l, h) = exp_range(&qx);
        prop_assert!(encloses_range(a.exp(), &l, &h));
        let (l, h) = series(&qx, |n| [0, 1, 0, -1][(n % 4) as usize], 30);
        prop_assert!(encloses_range(a.sin(), &l, &h));
        let (l, h) = series(&qx, |n| [1, 0, -1, 0][(n % 4) as usize], 30);
        prop_assert!(encloses_range(a.cos(), &l, &h));
    }

    #[test]
    fn log_brackets_its_argument(lo in 0.2f64..5.0, w in 0.0f64..0.1, t in 0.0f64..=1.0) {
        let a = Interval::hull_of(lo, lo + w);
        let x = q(pick(a, t));
        let r = a.ln().unwrap();
        prop_assume!(r.lo().abs() <= 2.0 && r.hi().abs() <= 2.0);
        // ln x ∈ [lo, hi] ⟺ e^lo ≤ x ≤ e^hi
        let (_, e_lo) = exp_range(&q(r.lo()));
        let (e_hi, _) = exp_range(&q(r.hi()));
        prop_assert!(e_lo <= x && x <= e_hi);
    }

    #[test]
    fn inclusion_monotonicity(a in interval(), b in interval(), ea in 0.0f64..1.0, eb in 0.0f64..1.0) {
        let a2 = a.inflate(ea * a.mag().max(1e-300));
        let b2 = b.inflate(eb * b.mag().max(1e-300));
        prop_assert!((a + b).is_subset(a2 + b2));
        prop_assert!((a - b).is_subset(a2 - b2));
        prop_assert!((a * b).is_subset(a2 * b2));
        if !b2.contains_zero() {
            prop_assert!(a.checked_div(b).unwrap().is_subset(a2.checked_div(b2).unwrap()));
        }
        prop_assert!(a.sqr().is_subset(a2.sqr()));
    }

    #[test]
    fn exact_ratios_contain_the_rational(p in -1_000_000i64..1_000_000, d in 1i64..1_000_000) {
        let r = Interval::exact(p).checked_div(Interval::exact(d)).unwrap();
        let exact = BigRational::new(BigInt::from(p), BigInt::from(d));
        prop_assert!(encloses(r, &exact));
        prop_assert!(encloses(Interval::ratio(p, d).unwrap(), &exact));
    }

    #[test]
    fn unit_circle_has_modulus_one(lo in -10.0f64..10.0, w in 0.0f64..1.0) {
        let (z, zc) = unit_circle(Interval::hull_of(lo, lo + w));
        prop_assert!(z.abs().contains(1.0));
        prop_assert!(zc.abs().contains(1.0));
    }
}
