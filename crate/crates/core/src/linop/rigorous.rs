//! Enclosures of `A B` for a float matrix `A` and an interval matrix `B`.
//!
//! The midpoint product runs through the blocked float kernels; its rounding
//! error and the radius contribution are bounded by a second nonnegative
//! product, following the usual a priori bound `|fl(ΣaᵢBᵢ) − ΣaᵢBᵢ| ≤ γ_m Σ|aᵢ||Bᵢ|`
//! with `γ_m = m u / (1 − m u)`.

use num_complex::Complex64;

use super::mat::{Gemm, Mat};
use crate::error::{Error, Result};
use crate::scalar::Enclose;
use crate::interval::{add_up, mul_up, sub_down, ComplexInterval, Interval};

const UNIT_ROUNDOFF: f64 = 1.1102230246251565e-16;

/// Upper bound of `γ_m`.
fn gamma(m: usize) -> f64 {
    let mu = mul_up(m as f64, UNIT_ROUNDOFF);
    let den = sub_down(1.0, mu);
    crate::interval::div_up(mu, den)
}

/// Multiplier absorbing the rounding of the nonnegative bound product itself.
fn safety(k: usize) -> f64 {
    add_up(1.0, mul_up(2.0, gamma(k + 4)))
}

fn underflow_slack(k: usize) -> f64 {
    (k as f64 + 2.0) * f64::MIN_POSITIVE
}

fn check(a_cols: usize, b_rows: usize) -> Result<()> {
    if a_cols != b_rows {
        return Err(Error::Dimension(format!(
            "rigorous product inner dimensions {a_cols} and {b_rows}"
        )));
    }
    Ok(())
}

/// Enclosure of `A B`, `A` real floats, `B` real intervals.
pub fn mul_float_interval(a: &Mat<f64>, b: &Mat<Interval>) -> Result<Mat<Interval>> {
    check(a.cols(), b.rows())?;
    let k = a.cols();
    let bm = b.map(|x| x.mid());
    let brad = b.map(|x| x.rad());
    let cm = f64::gemm(a, &bm);
    let g = gamma(k + 2);
    let e = Mat::from_fn(b.rows(), b.cols(), |i, j| {
        add_up(mul_up(bm.get(i, j).abs(), g), brad.get(i, j))
    });
    let aabs = a.map(f64::abs);
    let d = f64::gemm(&aabs, &e);
    let fac = safety(k);
    let eta = underflow_slack(k);
    Ok(Mat::from_fn(cm.rows(), cm.cols(), |i, j| {
        let r = add_up(mul_up(d.get(i, j), fac), eta);
        let c = cm.get(i, j);
        Interval::new(sub_down(c, r), add_up(c, r)).expect("finite product")
    }))
}

/// Enclosure of `A B`, `A` complex floats, `B` complex intervals.
pub fn mul_float_interval_c(
    a: &Mat<Complex64>,
    b: &Mat<ComplexInterval>,
) -> Result<Mat<ComplexInterval>> {
    check(a.cols(), b.rows())?;
    let k = a.cols();
    let bm = b.map(|z| z.mid());
    let cm = Complex64::gemm(a, &bm);
    let g = gamma(2 * k + 2);
    let e = Mat::from_fn(b.rows(), b.cols(), |i, j| {
        let z = b.get(i, j);
        let m = bm.get(i, j);
        let r = z.re.rad().max(z.im.rad());
        add_up(mul_up(add_up(m.re.abs(), m.im.abs()), g), r)
    });
    let aabs = a.map(|z| add_up(z.re.abs(), z.im.abs()));
    let d = f64::gemm(&aabs, &e);
    let fac = safety(2 * k);
    let eta = underflow_slack(2 * k);
    Ok(Mat::from_fn(cm.rows(), cm.cols(), |i, j| {
        let r = add_up(mul_up(d.get(i, j), fac), eta);
        let c = cm.get(i, j);
        ComplexInterval::new(
            Interval::new(sub_down(c.re, r), add_up(c.re, r)).expect("finite product"),
            Interval::new(sub_down(c.im, r), add_up(c.im, r)).expect("finite product"),
        )
    }))
}

/// Float scalars whose matrix products with interval matrices can be enclosed.
pub trait RigorousMul: Enclose + Gemm {
    fn mul_rig(a: &Mat<Self>, b: &Mat<Self::Rigorous>) -> Result<Mat<Self::Rigorous>>;
}

impl RigorousMul for f64 {
    fn mul_rig(a: &Mat<f64>, b: &Mat<Interval>) -> Result<Mat<Interval>> {
        mul_float_interval(a, b)
    }
}

impl RigorousMul for Complex64 {
    fn mul_rig(a: &Mat<Complex64>, b: &Mat<ComplexInterval>) -> Result<Mat<ComplexInterval>> {
        mul_float_interval_c(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encloses_naive_interval_product() {
        let a = Mat::from_fn(6, 9, |i, j| ((i * 13 + j * 7) % 17) as f64 / 7.0 - 1.1);
        let b = Mat::from_fn(9, 4, |i, j| {
            let c = ((i * 3 + j * 5) % 11) as f64 / 3.0 - 1.4;
            Interval::new(c - 1e-9, c + 2e-9).unwrap()
        });
        let ai = a.map(Interval::point);
        let exact = ai.mul_naive(&b).unwrap();
        let fast = mul_float_interval(&a, &b).unwrap();
        for i in 0..6 {
            for j in 0..4 {
                assert!(exact.get(i, j).is_subset(fast.get(i, j).inflate(0.0)));
                assert!(fast.get(i, j).width() < 1e-7);
            }
        }
    }

    #[test]
    fn complex_product_contains_pointwise() {
        let a = Mat::from_fn(5, 5, |i, j| Complex64::new(i as f64 - 2.0, 0.3 * j as f64));
        let b = Mat::from_fn(5, 3, |i, j| {
            ComplexInterval::point(0.1 * (i + j) as f64, -0.2 * i as f64).inflate(1e-12)
        });
        let ai = a.map(|z| ComplexInterval::point(z.re, z.im));
        let exact = ai.mul_naive(&b).unwrap();
        let fast = mul_float_interval_c(&a, &b).unwrap();
        for i in 0..5 {
            for j in 0..3 {
                assert!(exact.get(i, j).mid().re >= fast.get(i, j).re.lo());
                assert!(fast.get(i, j).contains(exact.get(i, j).mid()));
            }
        }
    }
}
