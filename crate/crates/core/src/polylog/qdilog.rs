//! The quantum dilogarithm
//! `φ_N(t) = ∫_γ e^{(2t−1)x} / (4x sinh x sinh(x/(N+1/2))) dx`
//! along `γ = (−∞,−1] ∪ {|z|=1, Im z ≥ 0} ∪ [1,∞)`.
//!
//! The integral converges for `−1/(2N+1) < Re t < 1 + 1/(2N+1)`; both endpoints
//! `t = 0` and `t = 1` are needed by the exact lattice representation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::quad::{gauss_legendre, integrate_contour_split, ContourPieces};
use crate::numerics::{ComplexValue, NumericsConfig, I, TAU};
use crate::polylog::li2::li2;

/// The root of unity `ξ_N = e^{2πi/(N+1/2)} = e^{4πi/(2N+1)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootOfUnity {
    pub n: u32,
    pub xi: ComplexValue,
}

impl RootOfUnity {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("RootOfUnity", "N must be a positive integer"));
        }
        let xi = Complex64::from_polar(1.0, 2.0 * TAU / (2 * n + 1) as f64);
        Ok(RootOfUnity { n, xi })
    }

    /// `N + 1/2`.
    #[inline]
    pub fn level(&self) -> f64 {
        self.n as f64 + 0.5
    }

    /// `2N + 1`.
    #[inline]
    pub fn order(&self) -> u32 {
        2 * self.n + 1
    }

    /// `1/(2N+1)`, the lattice spacing.
    #[inline]
    pub fn spacing(&self) -> f64 {
        1.0 / self.order() as f64
    }

    /// The distinguished square root `ξ_N^{1/2} = e^{2πi/(2N+1)}`.
    pub fn xi_half(&self) -> ComplexValue {
        Complex64::from_polar(1.0, TAU / self.order() as f64)
    }

    fn check_domain(&self, op: &'static str, t: ComplexValue) -> Result<()> {
        let h = self.spacing();
        if !(t.re > -h && t.re < 1.0 + h) || !t.im.is_finite() {
            return Err(Error::domain(
                op,
                format!("Re t = {} outside ({}, {}) for N = {}", t.re, -h, 1.0 + h, self.n),
            ));
        }
        Ok(())
    }
}

/// Integrand on the arc.
#[inline]
fn arc_integrand(z: Complex64, a: Complex64, k: f64) -> Complex64 {
    (a * z).exp() / (z * z.sinh() * (z / k).sinh() * 4.0)
}

/// Folded ray integrand `f(x) + f(−x)` written without overflow:
/// `(e^{(a−c)x} − e^{(−a−c)x}) / (x (1−e^{−2x})(1−e^{−2x/K}))`, `c = 1 + 1/K`.
#[inline]
fn ray_integrand(x: f64, a: Complex64, k: f64) -> Complex64 {
    let c = 1.0 + 1.0 / k;
    let den = x * (-(-2.0 * x).exp_m1()) * (-(-2.0 * x / k).exp_m1());
    (((a - c) * x).exp() - ((-a - c) * x).exp()) / den
}

#[inline]
fn ray_integrand_deriv(x: f64, a: Complex64, k: f64) -> Complex64 {
    let c = 1.0 + 1.0 / k;
    let den = (-(-2.0 * x).exp_m1()) * (-(-2.0 * x / k).exp_m1());
    (((a - c) * x).exp() + ((-a - c) * x).exp()) * 2.0 / den
}

/// `φ_N(t)` by adaptive contour quadrature.
pub fn phi_n(root: &RootOfUnity, t: ComplexValue, cfg: &NumericsConfig) -> Result<ComplexValue> {
    root.check_domain("phi_n", t)?;
    let k = root.level();
    let a = t * 2.0 - 1.0;
    let pieces = ContourPieces::new(cfg.contour_radius);
    let r = integrate_contour_split(&|z| arc_integrand(z, a, k), |x| ray_integrand(x, a, k), &pieces, cfg)?;
    Ok(r.value)
}

/// `φ_N'(t)` by contour quadrature of the `t`-differentiated integrand.
pub fn phi_n_deriv(root: &RootOfUnity, t: ComplexValue, cfg: &NumericsConfig) -> Result<ComplexValue> {
    root.check_domain("phi_n_deriv", t)?;
    let k = root.level();
    let a = t * 2.0 - 1.0;
    let pieces = ContourPieces::new(cfg.contour_radius);
    let r = integrate_contour_split(
        &|z| arc_integrand(z, a, k) * z * 2.0,
        |x| ray_integrand_deriv(x, a, k),
        &pieces,
        cfg,
    )?;
    Ok(r.value)
}

/// Right-hand side of the reflection identity
/// `φ_N(t) + φ_N(1−t) = 2πi(−(2N+1)/4 (t² − t + 1/6) + 1/(12(2N+1)))`.
pub fn phi_n_reflection_rhs(root: &RootOfUnity, t: ComplexValue) -> ComplexValue {
    let m = root.order() as f64;
    I * TAU * (-(t * t - t + 1.0 / 6.0) * (m / 4.0) + 1.0 / (12.0 * m))
}

/// Two-term expansion
/// `φ_N(t) ≈ (N+½)/(2πi) Li₂(e^{2πit}) − πi e^{2πit} / (6(1 − e^{2πit})(2N+1))`,
/// accurate to `O((N+½)^{-3})` for `0 < Re t < 1`.
pub fn phi_n_asymptotic(root: &RootOfUnity, t: ComplexValue) -> Result<ComplexValue> {
    root.check_domain("phi_n_asymptotic", t)?;
    let x = (I * TAU * t).exp();
    let d = li2(x)?;
    let m = root.order() as f64;
    Ok(d * (root.level() / (TAU * I)) - I * std::f64::consts::PI * x / (6.0 * (Complex64::new(1.0, 0.0) - x) * m))
}

/// Closed form of `φ_N(1/(2N+1))`.
pub fn phi_n_at_spacing(root: &RootOfUnity) -> ComplexValue {
    let m = root.order() as f64;
    let pi = std::f64::consts::PI;
    m / (4.0 * pi * I) * (pi * pi / 6.0) + 0.5 * (m / 2.0).ln() + I * (pi / 4.0) - I * (pi / (6.0 * m))
}

/// Fixed-node quadrature rule for `φ_N` on a strip of real parts.
///
/// The contour is discretised once (Gauss–Legendre on the arc and on geometric
/// ray panels out to the point where the slowest exponential has decayed below
/// 1e−18), after which each evaluation is a weighted sum of exponentials.
#[derive(Debug, Clone)]
pub struct PhiRule {
    root: RootOfUnity,
    re_min: f64,
    re_max: f64,
    arc_nodes: Vec<Complex64>,
    arc_weights: Vec<Complex64>,
    arc_weights_d: Vec<Complex64>,
    ray_nodes: Vec<f64>,
    ray_weights: Vec<f64>,
    ray_weights_d: Vec<f64>,
}

/// Gauss–Legendre order per panel of [`PhiRule`].
const RULE_ORDER: usize = 40;

impl PhiRule {
    /// Builds a rule valid for `re_min ≤ Re t ≤ re_max` (must lie in the
    /// convergence strip).
    pub fn new(root: RootOfUnity, re_min: f64, re_max: f64) -> Result<Self> {
        let h = root.spacing();
        if !(re_min > -h && re_max < 1.0 + h && re_min <= re_max) {
            return Err(Error::domain("PhiRule", format!("strip [{re_min}, {re_max}] outside the convergence strip")));
        }
        let k = root.level();
        let c = 1.0 + 1.0 / k;
        let decay = c - (2.0 * re_min - 1.0).abs().max((2.0 * re_max - 1.0).abs());
        let x_max = (42.0 / decay).max(8.0);
        let gl = gauss_legendre(RULE_ORDER);
        let pi = std::f64::consts::PI;
        let mut arc_nodes = Vec::with_capacity(RULE_ORDER);
        let mut arc_weights = Vec::with_capacity(RULE_ORDER);
        let mut arc_weights_d = Vec::with_capacity(RULE_ORDER);
        for (x, w) in gl.nodes.iter().zip(&gl.weights) {
            let th = 0.5 * pi * (x + 1.0);
            let z = Complex64::from_polar(1.0, th);
            // ∫_π^0 g(e^{iθ}) i e^{iθ} dθ = −∫_0^π …
            let base = -(I * z) / (z * z.sinh() * (z / k).sinh() * 4.0) * (0.5 * pi * w);
            arc_nodes.push(z);
            arc_weights.push(base);
            arc_weights_d.push(base * z * 2.0);
        }
        let mut ray_nodes = Vec::new();
        let mut ray_weights = Vec::new();
        let mut ray_weights_d = Vec::new();
        let mut lo = 1.0;
        while lo < x_max {
            let hi = 2.0 * lo;
            for (x, w) in gl.nodes.iter().zip(&gl.weights) {
                let xx = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x;
                let ww = 0.5 * (hi - lo) * w;
                let den = (-(-2.0 * xx).exp_m1()) * (-(-2.0 * xx / k).exp_m1());
                ray_nodes.push(xx);
                ray_weights.push(ww / (xx * den));
                ray_weights_d.push(2.0 * ww / den);
            }
            lo = hi;
        }
        Ok(PhiRule { root, re_min, re_max, arc_nodes, arc_weights, arc_weights_d, ray_nodes, ray_weights, ray_weights_d })
    }

    /// Rule covering the full convergence strip used by the lattice sums, `[0, 1]`.
    pub fn lattice(root: RootOfUnity) -> Result<Self> {
        PhiRule::new(root, 0.0, 1.0)
    }

    pub fn root(&self) -> &RootOfUnity {
        &self.root
    }

    fn check(&self, t: ComplexValue) -> Result<()> {
        let slack = 1e-12;
        if !(t.re >= self.re_min - slack && t.re <= self.re_max + slack) {
            return Err(Error::domain(
                "PhiRule::eval",
                format!("Re t = {} outside the rule's strip [{}, {}]", t.re, self.re_min, self.re_max),
            ));
        }
        Ok(())
    }

    /// `φ_N(t)`.
    pub fn eval(&self, t: ComplexValue) -> Result<ComplexValue> {
        self.check(t)?;
        Ok(self.eval_unchecked(t))
    }

    /// `φ_N(t)` without the strip check.
    pub fn eval_unchecked(&self, t: ComplexValue) -> ComplexValue {
        let a = t * 2.0 - 1.0;
        let c = 1.0 + 1.0 / self.root.level();
        let mut arc = Complex64::new(0.0, 0.0);
        for (z, w) in self.arc_nodes.iter().zip(&self.arc_weights) {
            arc += w * (a * z).exp();
        }
        let mut ray = Complex64::new(0.0, 0.0);
        if a.im == 0.0 {
            let ar = a.re;
            let mut s = 0.0;
            for (x, w) in self.ray_nodes.iter().zip(&self.ray_weights) {
                s += w * (((ar - c) * x).exp() - ((-ar - c) * x).exp());
            }
            ray.re = s;
        } else {
            for (x, w) in self.ray_nodes.iter().zip(&self.ray_weights) {
                ray += (((a - c) * *x).exp() - ((-a - c) * *x).exp()) * *w;
            }
        }
        arc + ray
    }

    /// `φ_N(t)` for real `t` (fast path).
    pub fn eval_real(&self, t: f64) -> ComplexValue {
        self.eval_unchecked(Complex64::new(t, 0.0))
    }

    /// `φ_N'(t)`.
    pub fn eval_deriv(&self, t: ComplexValue) -> Result<ComplexValue> {
        self.check(t)?;
        let a = t * 2.0 - 1.0;
        let c = 1.0 + 1.0 / self.root.level();
        let mut acc = Complex64::new(0.0, 0.0);
        for (z, w) in self.arc_nodes.iter().zip(&self.arc_weights_d) {
            acc += w * (a * z).exp();
        }
        for (x, w) in self.ray_nodes.iter().zip(&self.ray_weights_d) {
            acc += (((a - c) * *x).exp() + ((-a - c) * *x).exp()) * *w;
        }
        Ok(acc)
    }

    /// Number of quadrature nodes.
    pub fn len(&self) -> usize {
        self.arc_nodes.len() + self.ray_nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
