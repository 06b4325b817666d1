//! Damped Newton iteration for systems of two complex equations.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ComplexValue, NumericsConfig};
use crate::error::{Error, Result};

/// 2×2 complex Jacobian, row-major: `j[i][k] = ∂F_i/∂x_k`.
pub type Jacobian2 = [[ComplexValue; 2]; 2];

/// Maximum number of step halvings per iteration.
pub const MAX_HALVINGS: usize = 20;

/// Converged Newton iterate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NewtonOutcome {
    pub root: [ComplexValue; 2],
    /// Euclidean norm of `F(root)`.
    pub residual: f64,
    pub iterations: usize,
}

fn norm2(v: [ComplexValue; 2]) -> f64 {
    v[0].norm().hypot(v[1].norm())
}

fn finite(v: [ComplexValue; 2]) -> bool {
    v.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Solves `F(x) = 0` for `x ∈ C²` by Newton's method with step halving.
///
/// Each iteration solves `J δ = −F` by Cramer's rule; if the residual does not
/// decrease the step is halved up to [`MAX_HALVINGS`] times (the last halved
/// step is taken regardless). Iteration stops when `‖F‖ ≤ cfg.newton_tol`, or
/// when the step stagnates at rounding level with `‖F‖ ≤ 10³·newton_tol`.
/// `F` may return non-finite values to signal leaving its domain; such trial
/// points are treated as residual increases.
pub fn newton_solve_2d<F, J>(f: F, jac: J, x0: [ComplexValue; 2], cfg: &NumericsConfig) -> Result<NewtonOutcome>
where
    F: Fn([ComplexValue; 2]) -> [ComplexValue; 2],
    J: Fn([ComplexValue; 2]) -> Jacobian2,
{
    cfg.validate()?;
    let mut x = x0;
    let mut fx = f(x);
    if !finite(fx) {
        return Err(Error::domain("newton_solve_2d", "residual is not finite at the starting point"));
    }
    let mut res = norm2(fx);
    for iter in 0..cfg.newton_max_iter {
        if res <= cfg.newton_tol {
            return Ok(NewtonOutcome { root: x, residual: res, iterations: iter });
        }
        let j = jac(x);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        let scale = j.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
        if !(det.norm() > 1e-300 && det.norm() > f64::EPSILON * 1e-2 * scale * scale) || !det.re.is_finite() {
            return Err(Error::SingularJacobian { iteration: iter });
        }
        let d0 = -(fx[0] * j[1][1] - fx[1] * j[0][1]) / det;
        let d1 = -(j[0][0] * fx[1] - j[1][0] * fx[0]) / det;
        let mut lambda = 1.0;
        let mut trial = [x[0] + d0, x[1] + d1];
        let mut ft = f(trial);
        let mut rt = if finite(ft) { norm2(ft) } else { f64::INFINITY };
        let mut halvings = 0;
        // NaN-safe: a NaN residual never counts as an improvement
        while rt.partial_cmp(&res) != Some(std::cmp::Ordering::Less) && halvings < MAX_HALVINGS {
            lambda *= 0.5;
            trial = [x[0] + d0 * lambda, x[1] + d1 * lambda];
            ft = f(trial);
            rt = if finite(ft) { norm2(ft) } else { f64::INFINITY };
            halvings += 1;
        }
        if !rt.is_finite() {
            return Err(Error::NonConvergence { iterations: iter + 1, residual: res, last: x });
        }
        let step = lambda * d0.norm().hypot(d1.norm());
        let size = 1.0 + x[0].norm().hypot(x[1].norm());
        let stagnated = step <= 8.0 * f64::EPSILON * size;
        x = trial;
        fx = ft;
        res = rt;
        if stagnated {
            if res <= cfg.newton_tol * 1e3 {
                return Ok(NewtonOutcome { root: x, residual: res, iterations: iter + 1 });
            }
            return Err(Error::NonConvergence { iterations: iter + 1, residual: res, last: x });
        }
    }
    if res <= cfg.newton_tol {
        return Ok(NewtonOutcome { root: x, residual: res, iterations: cfg.newton_max_iter });
    }
    Err(Error::NonConvergence { iterations: cfg.newton_max_iter, residual: res, last: x })
}

/// Convenience constructor for a complex pair.
pub fn pair(a: f64, b: f64, c: f64, d: f64) -> [ComplexValue; 2] {
    [Complex64::new(a, b), Complex64::new(c, d)]
}
