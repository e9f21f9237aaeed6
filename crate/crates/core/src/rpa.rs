//! The radii polynomial gate and the floating-point Newton iteration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linop::{Lu, Mat};
use crate::scalar::Scalar;

/// Outcome of the contraction test on `B(x̄, r)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExistenceResult {
    /// Smallest certified radius, `sup Y / (1 − sup Z)` rounded up; `None` if `Z ≥ 1`.
    pub r_inf: Option<f64>,
    /// Largest radius covered by the `Z` bound; `None` encodes `R = ∞`.
    pub r_sup: Option<f64>,
    pub success: bool,
    pub y: Interval,
    pub z: Interval,
}

impl ExistenceResult {
    pub fn radius(&self) -> Option<f64> {
        if self.success {
            self.r_inf
        } else {
            None
        }
    }
}

/// Contraction gate: success iff `sup Z < 1` and `Y/(1 − Z) ≤ R`.
///
/// `r_big` may be `f64::INFINITY`.
pub fn interval_of_existence(y: Interval, z: Interval, r_big: f64) -> ExistenceResult {
    let r_sup = if r_big.is_finite() { Some(r_big) } else { None };
    assert!(!(r_big < 0.0), "R must be nonnegative");
    if !(z.hi() < 1.0) {
        return ExistenceResult {
            r_inf: None,
            r_sup,
            success: false,
            y,
            z,
        };
    }
    let denom = Interval::ONE - Interval::point(z.hi());
    let q = Interval::point(y.hi().max(0.0))
        .checked_div(denom)
        .expect("1 - sup Z is positive");
    let r_inf = q.hi();
    ExistenceResult {
        r_inf: Some(r_inf),
        r_sup,
        success: r_inf <= r_big,
        y,
        z,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewtonOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            tol: 1e-14,
            max_iter: 20,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NewtonOutcome<T> {
    pub x: Vec<T>,
    pub success: bool,
    pub iterations: usize,
    /// `‖F(x_n)‖₁` for every visited iterate.
    pub residuals: Vec<f64>,
}

impl<T> NewtonOutcome<T> {
    pub fn residual(&self) -> f64 {
        *self.residuals.last().unwrap_or(&f64::INFINITY)
    }
}

pub fn norm1<T: Scalar>(v: &[T]) -> f64 {
    v.iter().map(|x| x.abs_sup()).sum()
}

/// Undamped Newton; `solve(x, F(x))` returns the step `DF(x)⁻¹ F(x)`.
pub fn newton_with<T: Scalar>(
    mut f: impl FnMut(&[T]) -> Result<Vec<T>>,
    mut solve: impl FnMut(&[T], &[T]) -> Result<Vec<T>>,
    x0: Vec<T>,
    opts: NewtonOptions,
) -> Result<NewtonOutcome<T>> {
    let mut x = x0;
    let mut residuals = Vec::new();
    for it in 0..=opts.max_iter {
        let fx = f(&x)?;
        let r = norm1(&fx);
        residuals.push(r);
        log::debug!("newton iteration {it}: residual {r:e}");
        if r <= opts.tol {
            return Ok(NewtonOutcome {
                x,
                success: true,
                iterations: it,
                residuals,
            });
        }
        if !r.is_finite() || it == opts.max_iter {
            break;
        }
        let step = solve(&x, &fx)?;
        for (xi, si) in x.iter_mut().zip(step) {
            *xi = *xi - si;
        }
    }
    Ok(NewtonOutcome {
        iterations: residuals.len() - 1,
        x,
        success: false,
        residuals,
    })
}

/// Undamped Newton with a dense Jacobian solved by partial-pivoting LU.
pub fn newton<T: Scalar>(
    f: impl FnMut(&[T]) -> Result<Vec<T>>,
    mut df: impl FnMut(&[T]) -> Result<Mat<T>>,
    x0: Vec<T>,
    opts: NewtonOptions,
) -> Result<NewtonOutcome<T>> {
    newton_with(
        f,
        |x, fx| {
            let j = df(x)?;
            Lu::factor(&j)
                .map_err(|e| Error::Newton(format!("singular Jacobian: {e}")))?
                .solve(fx)
        },
        x0,
        opts,
    )
}
