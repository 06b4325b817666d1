//! The critical point `(t₀, s₀)` of `V(p, ·, ·)`, the constants `ζ(p)` and
//! `ω(p)`, and the one-dimensional slice data `T₁(c)`, `h(c)`, `c(p)`, `c_upper(p)`.

mod slice;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{clog, csqrt, newton_solve_2d, ComplexValue, NumericsConfig, I, TAU};
use crate::polylog::V8;
use crate::potential::{det2, grad_v, h_factor, hess_v, region_contains, v, PotentialPoint, RegionSpec};

pub use slice::{
    h_series, h_value, slice_c, slice_critical_t1, slice_gradient_t, slice_re_v, slice_value_minus, slice_value_plus,
};

const PI: f64 = std::f64::consts::PI;

/// Truncated power series for the critical point in `γ = 1/p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesSeed {
    pub gamma: f64,
    /// Coefficients of `γ⁰ … γ⁴` in `t(γ)`.
    pub t_series: [ComplexValue; 5],
    /// Coefficients of `γ⁰ … γ⁴` in `s(γ)`.
    pub s_series: [ComplexValue; 5],
}

impl SeriesSeed {
    pub fn new(p: i64) -> Self {
        let pi3 = PI * PI * PI;
        let c = Complex64::new;
        let t_series = [
            clog(c(1.0, -2.0)) / (I * TAU) + 1.0,
            c(0.0, 0.0),
            c(1.0, 2.0) * (PI / 40.0),
            c(3.0, 1.0) * (PI / 80.0),
            c((180.0 * PI + 19.0 * pi3) / 9600.0, -(45.0 * PI - 4.0 * pi3) / 4800.0),
        ];
        let s_series = [
            c(0.5, 0.0),
            c(0.5, 0.0),
            c(1.0, -1.0) / 8.0,
            c(0.0, -1.0 / 16.0),
            -c(1.0 / 61.0, (3.0 + PI * PI) / 192.0),
        ];
        SeriesSeed { gamma: 1.0 / p as f64, t_series, s_series }
    }

    fn eval(coeffs: &[ComplexValue; 5], g: f64) -> ComplexValue {
        coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * g + c)
    }

    /// `(t(γ), s(γ))`.
    pub fn point(&self) -> [ComplexValue; 2] {
        [Self::eval(&self.t_series, self.gamma), Self::eval(&self.s_series, self.gamma)]
    }
}

/// `(t(1/p), s(1/p))` from the truncated series.
pub fn seed_from_series(p: i64) -> [ComplexValue; 2] {
    SeriesSeed::new(p).point()
}

/// Solved critical point and the constants built from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalData {
    pub p: i64,
    pub t0: ComplexValue,
    pub s0: ComplexValue,
    pub x0: ComplexValue,
    pub y0: ComplexValue,
    /// `ζ(p) = V(p, t₀, s₀)`.
    pub zeta: ComplexValue,
    /// `ζ_R(p) = Re ζ(p)`.
    pub zeta_r: f64,
    /// `H(p, x₀, y₀)`.
    pub h: ComplexValue,
    /// `det Hess V(t₀, s₀) = (2πi)² H`.
    pub det_hess: ComplexValue,
    /// `ω(p)`.
    pub omega: ComplexValue,
    /// `‖grad V(t₀, s₀)‖`.
    pub residual: f64,
    pub iterations: usize,
}

impl CriticalData {
    /// `2πζ(p)`.
    pub fn two_pi_zeta(&self) -> ComplexValue {
        self.zeta * TAU
    }
}

/// `(1 − x)^{3/2}` as `exp(3/2 · log(1 − x))`, principal logarithm.
fn one_minus_pow32(x: ComplexValue) -> ComplexValue {
    (clog(Complex64::new(1.0, 0.0) - x) * 1.5).exp()
}

/// `ω = sin(2πs₀) x₀ / ((1 − x₀)^{3/2} √det Hess V(t₀, s₀))`, principal square root.
pub fn omega_hessian_form(t0: ComplexValue, s0: ComplexValue, det_hess: ComplexValue) -> ComplexValue {
    let x0 = (I * TAU * t0).exp();
    (s0 * TAU).sin() * x0 / (one_minus_pow32(x0) * csqrt(det_hess))
}

/// `ω = (y₀ − y₀⁻¹) x₀ / (−4π (1 − x₀)^{3/2} √H)` with `√H := √(det Hess)/(2πi)`,
/// i.e. the same square-root branch as [`omega_hessian_form`].
pub fn omega_h_form(x0: ComplexValue, y0: ComplexValue, det_hess: ComplexValue) -> ComplexValue {
    let sqrt_h = csqrt(det_hess) / (I * TAU);
    (y0 - y0.inv()) * x0 / (-4.0 * PI * one_minus_pow32(x0) * sqrt_h)
}

/// Newton solve of `grad V = 0` from a given start. The `s`-equation is
/// divided by `2p + 1` so both components have comparable size.
pub fn solve_critical_from(p: i64, start: [ComplexValue; 2], cfg: &NumericsConfig) -> Result<CriticalData> {
    if p < 2 {
        return Err(Error::domain("solve_critical", format!("p = {p}: the critical point is tracked for p ≥ 2")));
    }
    let scale = 1.0 / (2 * p + 1) as f64;
    let nan = Complex64::new(f64::NAN, f64::NAN);
    let f = |z: [ComplexValue; 2]| match grad_v(p, &PotentialPoint::new(z[0], z[1])) {
        Ok(g) => [g[0], g[1] * scale],
        Err(_) => [nan, nan],
    };
    let jac = |z: [ComplexValue; 2]| match hess_v(p, &PotentialPoint::new(z[0], z[1])) {
        Ok(h) => [[h[0][0], h[0][1]], [h[1][0] * scale, h[1][1] * scale]],
        Err(_) => [[nan, nan], [nan, nan]],
    };
    let out = newton_solve_2d(f, jac, start, cfg)?;
    let [t0, s0] = out.root;
    let pt = PotentialPoint::new(t0, s0);
    let g = grad_v(p, &pt)?;
    let zeta = v(p, &pt)?;
    let x0 = pt.x();
    let y0 = pt.y();
    let hess = hess_v(p, &pt)?;
    let det_hess = det2(&hess);
    Ok(CriticalData {
        p,
        t0,
        s0,
        x0,
        y0,
        zeta,
        zeta_r: zeta.re,
        h: h_factor(p, x0, y0),
        det_hess,
        omega: omega_hessian_form(t0, s0, det_hess),
        residual: g[0].norm().hypot(g[1].norm()),
        iterations: out.iterations,
    })
}

/// Solves the critical system for `p ≥ 6` from the series seed and checks
/// that `(Re t₀, Re s₀)` lies in `U₀`.
pub fn solve_critical(p: i64, cfg: &NumericsConfig) -> Result<CriticalData> {
    if p < 6 {
        return Err(Error::domain("solve_critical", format!("p = {p}: the seed series is valid for p ≥ 6")));
    }
    let data = solve_critical_from(p, seed_from_series(p), cfg)?;
    if !region_contains(RegionSpec::U { n: 0, p }, data.t0.re, data.s0.re) {
        return Err(Error::Consistency(format!(
            "critical point ({}, {}) escaped U_0 for p = {p}",
            data.t0, data.s0
        )));
    }
    Ok(data)
}

/// Truncated series `ζ_R(p) ≈ (v₈ − π²γ²/4 − π²γ³/8 − π²(6+π²)γ⁴/192)/(2π)`, `γ = 1/p`.
pub fn zeta_r_series(p: i64) -> f64 {
    let g = 1.0 / p as f64;
    let pi2 = PI * PI;
    (V8 - pi2 * g * g / 4.0 - pi2 * g.powi(3) / 8.0 - pi2 * (6.0 + pi2) / 192.0 * g.powi(4)) / TAU
}

/// Lower bound `v₈ − (49π²/64)/p²` for `2πζ_R(p)`.
pub fn volume_lower_bound(p: i64) -> f64 {
    V8 - 49.0 * PI * PI / 64.0 / (p * p) as f64
}

/// `c_upper(p) = (1/π)(v₈ − 2πζ_R(p))^{1/2} + 1/2`.
pub fn c_upper(zeta_r: f64) -> Result<f64> {
    let gap = V8 - TAU * zeta_r;
    if gap < 0.0 {
        return Err(Error::domain("c_upper", format!("2πζ_R = {} exceeds v₈", TAU * zeta_r)));
    }
    Ok(gap.sqrt() / PI + 0.5)
}
