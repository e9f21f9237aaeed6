//! Enclosures of a certified parameterization and its partial derivatives.

use crate::error::{Error, Result};
use crate::interval::{div_up, mul_up, ComplexInterval, Interval};
use crate::manifold::ManifoldCertificate;

/// Value and Jacobian enclosures of `P⋆` at one point.
#[derive(Clone, Copy, Debug)]
pub struct ChartEval {
    pub value: [ComplexInterval; 3],
    /// `jac[i][j] ⊇ ∂_{θ_{j+1}} P⋆_i`.
    pub jac: [[ComplexInterval; 2]; 3],
}

/// Upper bound on `sup_{k ≥ 1} k δ^{k−1} ν^{−k}` for every `δ ≤ delta_hi < ν`.
///
/// Equals `1/ν` when the maximizer lies below `k = 1`, and the continuous
/// supremum `1/(e δ |ln(δ/ν)|)` at `delta_hi` otherwise.
pub fn derivative_factor(delta_hi: f64, nu: f64) -> Result<f64> {
    if !(delta_hi < nu) {
        return Err(Error::Proof(format!(
            "evaluation point modulus {delta_hi} reaches the analyticity radius {nu}"
        )));
    }
    let nu_i = Interval::point(nu);
    let base = div_up(1.0, nu);
    let threshold = nu_i.checked_div(Interval::e())?;
    if delta_hi < threshold.lo() {
        return Ok(base);
    }
    let d = Interval::point(delta_hi);
    let ln = nu_i.checked_div(d)?.ln()?;
    let den = Interval::e() * d * ln;
    Ok(base.max(Interval::ONE.checked_div(den)?.hi()))
}

/// Enclose `P⋆(θ)` and `∂_{θ_j} P⋆(θ)` from `P̄` and the certified radius `r`.
pub fn rigorous_eval_p(cert: &ManifoldCertificate, theta: [ComplexInterval; 2]) -> Result<ChartEval> {
    let p = cert.p_enclosure();
    let delta = theta.map(|t| t.abs().hi());
    let widen_d = [
        mul_up(cert.r, derivative_factor(delta[0], cert.nu)?),
        mul_up(cert.r, derivative_factor(delta[1], cert.nu)?),
    ];
    let value = std::array::from_fn(|i| p[i].eval(theta[0], theta[1]).inflate(cert.r));
    let jac = std::array::from_fn(|i| {
        std::array::from_fn(|j| p[i].partial(j + 1).eval(theta[0], theta[1]).inflate(widen_d[j]))
    });
    Ok(ChartEval { value, jac })
}

/// Real part of an enclosure known to be real; errors if the imaginary part
/// excludes zero.
pub fn real_part(z: ComplexInterval, what: &str) -> Result<Interval> {
    if !z.im.contains_zero() {
        return Err(Error::Proof(format!(
            "{what} has imaginary enclosure {} excluding 0",
            z.im
        )));
    }
    Ok(z.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_points_use_first_coefficient() {
        assert_eq!(derivative_factor(0.1, 2.0).unwrap(), 0.5);
    }

    #[test]
    fn boundary_of_unit_disk() {
        let f = derivative_factor(1.0, 2.0).unwrap();
        let expect = 1.0 / (std::f64::consts::E * 2f64.ln());
        assert!(f >= expect && f < expect * (1.0 + 1e-14));
        assert!(derivative_factor(2.0, 2.0).is_err());
    }

    #[test]
    fn factor_is_monotone() {
        let mut last = 0.0;
        for j in 1..100 {
            let f = derivative_factor(j as f64 / 100.0 * 1.06, 1.0625).unwrap();
            assert!(f >= last);
            last = f;
        }
    }
}
