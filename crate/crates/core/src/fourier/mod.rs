//! Fourier coefficients of the cut-off lattice summand,
//! `ĥ_N(m,n) = (−1)^{p+m+n} e^{πi/4} ((N+½)^{3/2}/sin(π/(2N+1))) ∫_{D'₀} ψ(t,s) sin(2πs) e^{(N+½)V_N(p,t,s;m,n)} dt ds`,
//! and the Poisson-summation check `Σ_{k,l} ψ g_N(k,l) = Σ_{m,n} ĥ_N(m,n)`.
//!
//! Quadrature: iterated Gauss–Legendre over `D'₀` written in `τ = t − ½`,
//! `σ = |s − ½|`. Every constraint line of `D'₀` and its `ε`-offset is a panel
//! breakpoint, panels have length `∝ 1/(N+½)`, and each `σ`-node carries the
//! mirrored pair `s = ½ ± σ`, so the rule is exactly symmetric under
//! `s ↦ 1 − s`. The error is estimated by doubling the panel count.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jones::{KnotSpec, LatticeSum};
use crate::numerics::{gauss_legendre, ComplexSum, ComplexValue, TAU};
use crate::polylog::PhiRule;
use crate::potential::region::{DP0_S, DP0_T, DP0_TMS, DP0_TPS};
use crate::potential::{
    bump_psi, v_n_poly, ConvexPolygon, FinitePotential, FourierIndex, PotentialPoint, RegionSpec, DEFAULT_BUMP_EPS,
};

const PI: f64 = std::f64::consts::PI;

/// Quadrature settings for [`FourierIntegrator`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierConfig {
    /// Collar width `ε` of the cut-off `ψ`.
    pub eps: f64,
    /// Panels per unit length, in units of `N + ½` (coarse rule; the fine rule doubles it).
    pub panel_density: f64,
    /// Gauss–Legendre order on regular panels.
    pub order: usize,
    /// Gauss–Legendre order on sub-intervals shorter than [`Self::short_interval`].
    pub collar_order: usize,
    /// Sub-intervals shorter than this are collar pieces.
    pub short_interval: f64,
    /// Accepted error relative to `max|integrand| · area(D'₀)`.
    pub rel_tol: f64,
    /// Largest colour accepted (cost grows like `N³`).
    pub max_n: u32,
}

impl Default for FourierConfig {
    fn default() -> Self {
        FourierConfig {
            eps: DEFAULT_BUMP_EPS,
            panel_density: 2.0,
            order: 20,
            collar_order: 8,
            short_interval: 1e-3,
            rel_tol: 1e-6,
            max_n: 40,
        }
    }
}

/// One Fourier coefficient with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierCoefficient {
    pub m: i64,
    pub n: i64,
    pub value: ComplexValue,
    /// `|fine − coarse|` plus a rounding bound; always ≥ 0.
    pub quad_error: f64,
    /// The colour `N`.
    pub big_n: u32,
    pub p: i64,
}

/// `(−1)^{p} e^{πi/4} (N+½)^{3/2} / sin(π/(2N+1))`; the `(−1)^{m+n}` factor
/// is applied per coefficient.
fn base_prefactor(spec: &KnotSpec) -> ComplexValue {
    let k = spec.level();
    let sign = if spec.p.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Complex64::from_polar(sign, PI / 4.0) * k.powf(1.5) / (PI / (2 * spec.n + 1) as f64).sin()
}

fn parity(m: i64, n: i64) -> f64 {
    if (m + n).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Pointwise integrand of `ĥ_N(m,n)` (prefactor included).
#[derive(Debug, Clone)]
pub struct FourierIntegrand {
    spec: KnotSpec,
    potential: FinitePotential,
    prefactor: ComplexValue,
    eps: f64,
}

impl FourierIntegrand {
    pub fn new(spec: &KnotSpec, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 0.01) {
            return Err(Error::domain("FourierIntegrand", format!("collar width ε = {eps} must lie in (0, 0.01)")));
        }
        Ok(FourierIntegrand { spec: *spec, potential: FinitePotential::new(spec)?, prefactor: base_prefactor(spec), eps })
    }

    /// `(−1)^{p+m+n} e^{πi/4} ((N+½)^{3/2}/sin(π/(2N+1))) ψ(t,s) sin(2πs) e^{(N+½)V_N(t,s;m,n)}`;
    /// zero outside `D'₀`.
    pub fn eval(&self, t: f64, s: f64, idx: FourierIndex) -> Result<ComplexValue> {
        let psi = bump_psi(t, s, self.eps);
        if psi == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let vn = self.potential.eval(&PotentialPoint::real(t, s), idx)?;
        Ok(self.prefactor * parity(idx.m, idx.n) * psi * (TAU * s).sin() * (vn * self.spec.level()).exp())
    }
}

/// A quadrature node: `t`, the mirrored pair `s = ½ ± σ`, the product weight
/// and the `(m,n) = (0,0)` integrand without prefactor at both points.
#[derive(Debug, Clone, Copy)]
struct Node {
    t: f64,
    s_plus: f64,
    s_minus: f64,
    weight: f64,
    f_plus: ComplexValue,
    f_minus: ComplexValue,
}

fn sorted_breaks(mut v: Vec<f64>, lo: f64, hi: f64) -> Vec<f64> {
    v.retain(|x| *x > lo && *x < hi);
    v.push(lo);
    v.push(hi);
    v.sort_by(|a, b| a.partial_cmp(b).expect("breakpoints are finite"));
    v.dedup_by(|a, b| (*a - *b).abs() <= 1e-15);
    v
}

/// Gauss–Legendre nodes and weights on `[lo, hi]` split into panels.
fn panel_rule(breaks: &[f64], density: f64, cfg: &FourierConfig) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let len = b - a;
        if len <= 0.0 {
            continue;
        }
        let (panels, order) = if len < cfg.short_interval {
            (1, cfg.collar_order)
        } else {
            ((len * density).ceil().max(1.0) as usize, cfg.order)
        };
        let gl = gauss_legendre(order);
        let hstep = len / panels as f64;
        for j in 0..panels {
            let lo = a + j as f64 * hstep;
            let hi = if j + 1 == panels { b } else { lo + hstep };
            let (c, r) = (0.5 * (lo + hi), 0.5 * (hi - lo));
            for (x, wt) in gl.nodes.iter().zip(&gl.weights) {
                out.push((c + r * x, r * wt));
            }
        }
    }
    out
}

/// Values of the collar constants of `D'₀` (each bound and its `ε`-offset).
fn with_offsets((lo, hi): (f64, f64), eps: f64) -> [f64; 4] {
    [lo, lo + eps, hi - eps, hi]
}

/// `τ`-breakpoints: the `t`-bounds and every crossing of two `σ`-breakpoint families.
fn tau_breaks(eps: f64) -> Vec<f64> {
    let a = with_offsets(DP0_TMS, eps); // τ − σ = a
    let b = with_offsets((DP0_TPS.0 - 1.0, DP0_TPS.1 - 1.0), eps); // τ + σ = b
    let c = [DP0_S.1 - 0.5 - eps, DP0_S.1 - 0.5]; // σ = c
    let mut v: Vec<f64> = with_offsets(DP0_T, eps).iter().map(|t| t - 0.5).collect();
    for &x in &a {
        v.push(x);
        for &y in &b {
            v.push(0.5 * (x + y));
        }
        for &z in &c {
            v.push(x + z);
        }
    }
    for &y in &b {
        v.push(y);
        for &z in &c {
            v.push(y - z);
        }
    }
    v
}

/// `σ`-breakpoints at fixed `τ`.
fn sigma_breaks(tau: f64, eps: f64) -> Vec<f64> {
    let mut v = Vec::new();
    for a in with_offsets(DP0_TMS, eps) {
        v.push(tau - a);
    }
    for b in with_offsets((DP0_TPS.0 - 1.0, DP0_TPS.1 - 1.0), eps) {
        v.push(b - tau);
    }
    v.push(DP0_S.1 - 0.5 - eps);
    v.push(DP0_S.1 - 0.5);
    v
}

fn build_nodes(spec: &KnotSpec, rule: &PhiRule, cfg: &FourierConfig, density: f64) -> Result<Vec<Node>> {
    let poly = ConvexPolygon::of_region(RegionSpec::DPrime0);
    let (t_lo, t_hi) = poly.t_range();
    let t_breaks: Vec<f64> = sorted_breaks(tau_breaks(cfg.eps).iter().map(|x| x + 0.5).collect(), t_lo, t_hi);
    let t_rule = panel_rule(&t_breaks, density, cfg);
    let k = spec.level();
    let h = rule.root().spacing();
    let p = spec.p;
    let rows: Vec<Result<Vec<Node>>> = t_rule
        .par_iter()
        .map(|&(t, wt)| {
            let Some((lo, hi)) = poly.s_slice(t) else { return Ok(Vec::new()) };
            let sigma_max = hi - 0.5;
            if sigma_max <= 0.0 || ((0.5 - lo) - sigma_max).abs() > 1e-12 {
                return Err(Error::Consistency(format!("slice of D'₀ at t = {t} is not symmetric about s = 1/2")));
            }
            let tau = t - 0.5;
            let s_rule = panel_rule(&sorted_breaks(sigma_breaks(tau, cfg.eps), 0.0, sigma_max), density, cfg);
            let phi_t = rule.eval_real(t) + rule.eval_real(t - h) + rule.eval_real(t + h);
            let mut row = Vec::with_capacity(s_rule.len());
            for (sigma, ws) in s_rule {
                // s = ½ ± σ: the two φ arguments t+s+h−1 and t−s+h swap
                let phi_a = rule.eval_real(tau + sigma + h);
                let phi_b = rule.eval_real(tau - sigma + h);
                let phi_sum = (phi_a + phi_b - phi_t) / k;
                let val = |s: f64| {
                    let psi = bump_psi(t, s, cfg.eps);
                    if psi == 0.0 {
                        return Complex64::new(0.0, 0.0);
                    }
                    let vn = v_n_poly(p, &PotentialPoint::real(t, s), h, FourierIndex::ZERO) + phi_sum;
                    psi * (TAU * s).sin() * (vn * k).exp()
                };
                let (sp, sm) = (0.5 + sigma, 0.5 - sigma);
                row.push(Node { t, s_plus: sp, s_minus: sm, weight: wt * ws, f_plus: val(sp), f_minus: val(sm) });
            }
            Ok(row)
        })
        .collect();
    let mut nodes = Vec::new();
    for r in rows {
        nodes.extend(r?);
    }
    Ok(nodes)
}

fn integrate(nodes: &[Node], k: f64, idx: FourierIndex) -> (ComplexValue, f64) {
    let mut acc = ComplexSum::new();
    let mut abs = 0.0;
    let (m, n) = (idx.m as f64, idx.n as f64);
    for nd in nodes {
        let ph = |s: f64| Complex64::from_polar(1.0, -TAU * k * (m * nd.t + n * s));
        let a = nd.f_plus * ph(nd.s_plus) * nd.weight;
        let b = nd.f_minus * ph(nd.s_minus) * nd.weight;
        abs += a.norm() + b.norm();
        acc.add(a);
        acc.add(b);
    }
    (acc.value(), abs)
}

/// Precomputed coarse and fine quadrature rules for one `(p, N)`; every
/// coefficient reuses the same `V_N` samples.
#[derive(Debug, Clone)]
pub struct FourierIntegrator {
    spec: KnotSpec,
    cfg: FourierConfig,
    coarse: Vec<Node>,
    fine: Vec<Node>,
    prefactor: ComplexValue,
    max_modulus: f64,
    area: f64,
}

impl FourierIntegrator {
    pub fn new(spec: &KnotSpec, cfg: &FourierConfig) -> Result<Self> {
        if spec.p < 6 {
            return Err(Error::domain("hhat", format!("p = {}: the cut-off construction needs p ≥ 6", spec.p)));
        }
        if spec.n > cfg.max_n {
            return Err(Error::domain("hhat", format!("N = {} exceeds the configured cap {}", spec.n, cfg.max_n)));
        }
        if !(cfg.eps > 0.0 && cfg.eps < 0.01) {
            return Err(Error::domain("hhat", format!("collar width ε = {} must lie in (0, 0.01)", cfg.eps)));
        }
        let rule = PhiRule::lattice(spec.root()?)?;
        let k = spec.level();
        let coarse = build_nodes(spec, &rule, cfg, cfg.panel_density * k)?;
        let fine = build_nodes(spec, &rule, cfg, 2.0 * cfg.panel_density * k)?;
        let prefactor = base_prefactor(spec);
        let max_modulus =
            fine.iter().map(|n| n.f_plus.norm().max(n.f_minus.norm())).fold(0.0, f64::max) * prefactor.norm();
        let area = ConvexPolygon::of_region(RegionSpec::DPrime0).area();
        Ok(FourierIntegrator { spec: *spec, cfg: *cfg, coarse, fine, prefactor, max_modulus, area })
    }

    /// Number of integrand samples in the fine rule (two per node).
    pub fn sample_count(&self) -> usize {
        2 * self.fine.len()
    }

    /// `max |integrand|` over the fine rule.
    pub fn max_modulus(&self) -> f64 {
        self.max_modulus
    }

    /// `ĥ_N(m, n)`.
    pub fn coefficient(&self, idx: FourierIndex) -> Result<FourierCoefficient> {
        let k = self.spec.level();
        let pre = self.prefactor * parity(idx.m, idx.n);
        let (fine, abs) = integrate(&self.fine, k, idx);
        let (coarse, _) = integrate(&self.coarse, k, idx);
        let value = pre * fine;
        let rounding = 64.0 * f64::EPSILON * abs * pre.norm();
        let quad_error = (pre * (fine - coarse)).norm() + rounding;
        let budget = self.cfg.rel_tol * self.max_modulus * self.area;
        if !(value.re.is_finite() && value.im.is_finite()) || quad_error > budget {
            return Err(Error::Quadrature { estimate: value, error: quad_error });
        }
        Ok(FourierCoefficient { m: idx.m, n: idx.n, value, quad_error, big_n: self.spec.n, p: self.spec.p })
    }
}

/// `ĥ_N(m, n)` with the default quadrature and collar width `eps`.
pub fn hhat(spec: &KnotSpec, idx: FourierIndex, eps: f64) -> Result<FourierCoefficient> {
    let cfg = FourierConfig { eps, ..FourierConfig::default() };
    FourierIntegrator::new(spec, &cfg)?.coefficient(idx)
}

/// Both sides of the Poisson summation identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoissonCheck {
    /// `Σ_{k,l} ψ(t_k, s_l) g_N(k, l)`.
    pub lattice: ComplexValue,
    /// `Σ ĥ_N(m, n)` over `|m| ≤ 1`, `−window−2 ≤ n ≤ window`.
    pub spectral: ComplexValue,
    /// Sum of the quadrature errors of the spectral terms.
    pub quad_error: f64,
}

/// `ψ`-weighted lattice sum.
pub fn cutoff_lattice_sum(spec: &KnotSpec, eps: f64) -> Result<ComplexValue> {
    let lattice = LatticeSum::new(spec)?;
    let mut acc = ComplexSum::new();
    for k in 0..spec.n {
        for l in 0..=k {
            let (t, s) = lattice.point(k, l);
            let psi = bump_psi(t, s, eps);
            if psi > 0.0 {
                acc.add(lattice.term(k, l)? * psi);
            }
        }
    }
    Ok(acc.value())
}

/// `Σ ĥ_N(m, n)` over `|m| ≤ m_max`, `−n_window−2 ≤ n ≤ n_window` (closed
/// under `n ↦ −n−2`), with the summed quadrature error.
pub fn spectral_partial_sum(integ: &FourierIntegrator, m_max: i64, n_window: i64) -> Result<(ComplexValue, f64)> {
    if m_max < 0 || n_window < 0 {
        return Err(Error::domain("spectral_partial_sum", "window bounds must be non-negative"));
    }
    let mut acc = ComplexSum::new();
    let mut err = 0.0;
    for m in -m_max..=m_max {
        for n in (-n_window - 2)..=n_window {
            let c = integ.coefficient(FourierIndex::new(m, n))?;
            acc.add(c.value);
            err += c.quad_error;
        }
    }
    Ok((acc.value(), err))
}

/// Lattice side against the spectral side over the window
/// `m ∈ {−1, 0, 1}`, `−window−2 ≤ n ≤ window`.
pub fn poisson_check(spec: &KnotSpec, window: i64, cfg: &FourierConfig) -> Result<PoissonCheck> {
    if window < 2 {
        return Err(Error::domain("poisson_check", format!("window = {window}: need window ≥ 2")));
    }
    let integ = FourierIntegrator::new(spec, cfg)?;
    let (spectral, quad_error) = spectral_partial_sum(&integ, 1, window)?;
    Ok(PoissonCheck { lattice: cutoff_lattice_sum(spec, cfg.eps)?, spectral, quad_error })
}

/// `log|ĥ_N(m,n)| / (N+½)`, the exponential growth rate of a coefficient.
pub fn growth_rate(c: &FourierCoefficient) -> f64 {
    c.value.norm().ln() / (c.big_n as f64 + 0.5)
}
