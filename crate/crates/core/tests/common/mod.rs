//! Oracles shared by the test targets.
#![allow(dead_code)]

use num_complex::Complex64;
use num_rational::BigRational;
use radii::interval::Interval;

pub const N: usize = 500;
pub const MUS: [f64; 3] = [1.01, 1.1, 1.5];
pub const KS: [usize; 3] = [5, 20, 100];

pub fn q(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// `lo ≤ v ≤ hi`, with infinite endpoints treated as unbounded.
pub fn encloses(iv: Interval, v: &BigRational) -> bool {
    let lo_ok = iv.lo() == f64::NEG_INFINITY || (iv.lo().is_finite() && q(iv.lo()) <= *v);
    let hi_ok = iv.hi() == f64::INFINITY || (iv.hi().is_finite() && *v <= q(iv.hi()));
    lo_ok && hi_ok
}

/// Antiderivative from −1 of the `l`-th basis function (`1` for `l = 0`, `2 T_l` otherwise),
/// from `∫ T_l = T_{l+1}/(2(l+1)) − T_{l−1}/(2(l−1))` and `T_k(−1) = (−1)^k`.
pub fn lc_column(l: usize) -> Vec<(usize, Interval)> {
    let r = |p: i64, q: usize| Interval::ratio(p, q as i64).unwrap();
    let mut out = match l {
        0 => vec![(1, r(1, 2))],
        1 => vec![(2, r(1, 4))],
        _ => vec![(l + 1, r(1, 2 * (l + 1))), (l - 1, r(-1, 2 * (l - 1)))],
    };
    let at_minus_one = out.iter().fold(Interval::ZERO, |acc, &(k, c)| {
        let sign = if k % 2 == 0 { 2 } else { -2 };
        acc + c * Interval::exact(sign)
    });
    out.push((0, if l == 0 { Interval::ONE } else { -at_minus_one }));
    out
}

pub fn weight(k: usize, mu: f64) -> Interval {
    if k == 0 {
        Interval::ONE
    } else {
        Interval::exact(2) * Interval::point(mu).powi(k as u32)
    }
}

/// Sup over columns `cols` of the weighted column sums of the `N × N` truncation
/// restricted to `rows`, as an enclosure.
pub fn lc_brute(mu: f64, cols: impl Iterator<Item = usize>, rows: impl Fn(usize) -> bool) -> Interval {
    cols.map(|l| {
        let s = lc_column(l)
            .into_iter()
            .filter(|&(k, _)| k < N && rows(k))
            .fold(Interval::ZERO, |acc, (k, c)| acc + c.abs() * weight(k, mu));
        s.checked_div(weight(l, mu)).unwrap()
    })
    .fold(Interval::ZERO, Interval::max)
}

/// `sup_{l > K} |ℰ_l| / (2 μ^l)` over the truncation.
pub fn e_brute(k: usize, mu: f64) -> Interval {
    (k + 1..N)
        .map(|l| Interval::exact(2).checked_div(weight(l, mu)).unwrap())
        .fold(Interval::ZERO, Interval::max)
}

/// `sup 1/|k1 λ1 + k2 λ2|` over `K < k1 + k2 ≤ K + 200`.
pub fn lt_brute(k: usize, l1: Complex64, l2: Complex64) -> f64 {
    let mut sup = 0.0f64;
    for n in k + 1..=k + 200 {
        for k1 in 0..=n {
            sup = sup.max(1.0 / (l1 * k1 as f64 + l2 * (n - k1) as f64).norm());
        }
    }
    sup
}

/// Roots of the monic cubic `λ³ + c2 λ² + c1 λ + c0` with one real root in `[lo, hi]`:
/// bisection for the real root, then the deflated quadratic.
pub fn cubic_roots(c: [f64; 3], mut lo: f64, mut hi: f64) -> [Complex64; 3] {
    let p = |x: f64| ((x + c[2]) * x + c[1]) * x + c[0];
    assert!(p(lo) * p(hi) < 0.0);
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if p(lo) * p(m) <= 0.0 {
            hi = m;
        } else {
            lo = m;
        }
    }
    let r = 0.5 * (lo + hi);
    // λ³ + c2 λ² + c1 λ + c0 = (λ − r)(λ² + b λ + d)
    let b = c[2] + r;
    let d = c[1] + r * b;
    let disc = Complex64::new(b * b - 4.0 * d, 0.0).sqrt();
    [Complex64::new(r, 0.0), (-b + disc) / 2.0, (-b - disc) / 2.0]
}
