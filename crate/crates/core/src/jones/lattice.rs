//! The lattice representation
//! `J_N(K_p; ξ_N) = Σ_{k=0}^{N−1} Σ_{l=0}^{k} g_N(k, l)` with
//! `g_N(k,l) = (−1)^p e^{πi/4} sin(2π(2l+1)/(2N+1)) δ e^{(N+1/2)V_N(t,s)} / (√(N+1/2) sin(π/(2N+1)))`
//! at `t = (2k+1)/(2N+1)`, `s = (2l+1)/(2N+1)`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::KnotSpec;
use crate::error::{Error, Result};
use crate::numerics::{ComplexSum, ComplexValue, TAU};
use crate::polylog::lobachevsky;
use crate::potential::{FinitePotential, FourierIndex, PotentialPoint};

/// Weight `δ(t, s)`: 2 when `0 < t+s ≤ 1`, 1 when `1 < t+s < 2`.
///
/// Requires `0 < t < 1` and `0 < t − s < 1`. Lattice points never hit
/// `t + s = 1` (it would need `2k + 2l + 2 = 2N + 1`); the closed lower case is
/// used for off-lattice callers.
pub fn delta_region(t: f64, s: f64) -> Result<u8> {
    if !(0.0 < t && t < 1.0 && 0.0 < t - s && t - s < 1.0) {
        return Err(Error::domain("delta_region", format!("({t}, {s}) violates 0 < t < 1, 0 < t−s < 1")));
    }
    let u = t + s;
    if 0.0 < u && u <= 1.0 {
        Ok(2)
    } else if 1.0 < u && u < 2.0 {
        Ok(1)
    } else {
        Err(Error::domain("delta_region", format!("t + s = {u} outside (0, 2)")))
    }
}

/// Lattice evaluator reusing one fixed-node quantum-dilogarithm rule.
#[derive(Debug, Clone)]
pub struct LatticeSum {
    spec: KnotSpec,
    potential: FinitePotential,
    prefactor: ComplexValue,
}

impl LatticeSum {
    pub fn new(spec: &KnotSpec) -> Result<Self> {
        let k = spec.level();
        let m = (2 * spec.n + 1) as f64;
        let sign = if spec.p.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let prefactor = Complex64::from_polar(sign, std::f64::consts::FRAC_PI_4) / (k.sqrt() * (std::f64::consts::PI / m).sin());
        Ok(LatticeSum { spec: *spec, potential: FinitePotential::new(spec)?, prefactor })
    }

    /// `(t, s)` of lattice index `(k, l)`.
    pub fn point(&self, k: u32, l: u32) -> (f64, f64) {
        let m = (2 * self.spec.n + 1) as f64;
        ((2 * k + 1) as f64 / m, (2 * l + 1) as f64 / m)
    }

    /// `log g_N(k, l)` (principal branch of the exponent kept unreduced), so
    /// that magnitudes beyond the double range stay representable.
    pub fn log_term(&self, k: u32, l: u32) -> Result<ComplexValue> {
        if l > k || k >= self.spec.n {
            return Err(Error::domain("g_term", format!("need 0 ≤ l ≤ k ≤ N−1, got k = {k}, l = {l}")));
        }
        let n = self.spec.n;
        debug_assert_ne!(2 * k + 2 * l + 2, 2 * n + 1, "parity excludes t + s = 1");
        let delta = if 2 * k + 2 * l + 2 < 2 * n + 1 { 2.0 } else { 1.0 };
        let (t, s) = self.point(k, l);
        let vn = self.potential.eval(&PotentialPoint::real(t, s), FourierIndex::ZERO)?;
        let m = (2 * n + 1) as f64;
        let sine = (TAU * (2 * l + 1) as f64 / m).sin();
        let amp = self.prefactor * sine * delta;
        Ok(amp.ln() + vn * self.spec.level())
    }

    /// `g_N(k, l)`.
    pub fn term(&self, k: u32, l: u32) -> Result<ComplexValue> {
        Ok(self.log_term(k, l)?.exp())
    }

    /// `Σ g_N(k, l)`; rows of fixed `k` are summed in parallel and reduced in
    /// ascending `k`.
    pub fn sum(&self) -> Result<ComplexValue> {
        let rows: Vec<Result<ComplexValue>> = (0..self.spec.n)
            .into_par_iter()
            .map(|k| {
                let mut acc = ComplexSum::new();
                for l in 0..=k {
                    acc.add(self.term(k, l)?);
                }
                Ok(acc.value())
            })
            .collect();
        let mut total = ComplexSum::new();
        for r in rows {
            total.add(r?);
        }
        Ok(total.value())
    }
}

/// `g_N(k, l)` for a single lattice point.
pub fn g_term(spec: &KnotSpec, k: u32, l: u32) -> Result<ComplexValue> {
    LatticeSum::new(spec)?.term(k, l)
}

/// `Σ_{k,l} g_N(k, l)`.
pub fn g_sum(spec: &KnotSpec) -> Result<ComplexValue> {
    LatticeSum::new(spec)?.sum()
}

/// `v_N(t,s) = Λ(t+s+h) + Λ(t−s+h) − Λ(t−h) − Λ(t) − Λ(t+h)`, `h = 1/(2N+1)`.
pub fn v_lattice_bound(n: u32, t: f64, s: f64) -> f64 {
    let h = 1.0 / (2 * n + 1) as f64;
    lobachevsky(t + s + h) + lobachevsky(t - s + h) - lobachevsky(t - h) - lobachevsky(t) - lobachevsky(t + h)
}

/// Per-term summary used by the neglect-bound check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeTermInfo {
    pub k: u32,
    pub l: u32,
    pub t: f64,
    pub s: f64,
    /// `log|g_N(k,l)| / (N+1/2)`.
    pub scaled_log_abs: f64,
}

impl LatticeSum {
    /// `log|g_N|/(N+1/2)` for every lattice point.
    pub fn scaled_log_magnitudes(&self) -> Result<Vec<LatticeTermInfo>> {
        let lev = self.spec.level();
        let mut out = Vec::with_capacity(self.spec.term_count() as usize);
        for k in 0..self.spec.n {
            for l in 0..=k {
                let (t, s) = self.point(k, l);
                let lg = self.log_term(k, l)?;
                out.push(LatticeTermInfo { k, l, t, s, scaled_log_abs: lg.re / lev });
            }
        }
        Ok(out)
    }
}
