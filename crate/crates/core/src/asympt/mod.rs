//! Leading asymptotics of `J_N(K_p; ξ_N)`:
//! `A_N = (−1)^{p+1} · 4π e^{πi/4} (N+½)^{1/2} / sin(π/(2N+1)) · ω(p) · e^{(N+½)ζ(p)} · (1 + Σ κ_i u^i)`
//! with `u = 2πi/(N+½)`, the ratio `r_N = J_N / A_N`, least-squares fits of
//! the `κ_i`, and growth-rate tables.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::critical::{solve_critical, CriticalData};
use crate::error::{Error, Result};
use crate::jones::{jones_exact_in, KnotSpec};
use crate::numerics::{clog, ComplexValue, NumericsConfig, PrecisionMode, I, TAU};

const PI: f64 = std::f64::consts::PI;

/// Colours above this are always evaluated in extended precision before a
/// ratio is formed.
pub const EXTENDED_ABOVE_N: u32 = 150;

/// Largest accepted condition number of the fitting matrix.
pub const MAX_FIT_CONDITION: f64 = 1e12;

/// Asymptotic model of `J_N(K_p; ξ_N)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticModel {
    pub p: i64,
    pub crit: CriticalData,
    /// `κ₁, …, κ_d` (empty for the leading-order model).
    pub kappas: Vec<ComplexValue>,
    /// `max_N |model − r_N|` over the fitting samples (0 when nothing was fitted).
    pub fit_residual: f64,
}

impl AsymptoticModel {
    /// Leading-order model (no `κ` corrections).
    pub fn kappa_free(crit: CriticalData) -> Self {
        AsymptoticModel { p: crit.p, crit, kappas: Vec::new(), fit_residual: 0.0 }
    }

    pub fn new(p: i64, cfg: &NumericsConfig) -> Result<Self> {
        Ok(Self::kappa_free(solve_critical(p, cfg)?))
    }

    /// `1 + Σ κ_i u^i` at `u = 2πi/(N+½)`.
    pub fn correction(&self, n: u32) -> ComplexValue {
        let u = expansion_variable(n);
        let mut acc = Complex64::new(1.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0);
        for k in &self.kappas {
            pow *= u;
            acc += k * pow;
        }
        acc
    }
}

/// `u = 2πi/(N+½)`.
pub fn expansion_variable(n: u32) -> ComplexValue {
    I * TAU / (n as f64 + 0.5)
}

/// `log A_N` of the leading-order model (principal logs of the constant
/// factors; the `e^{(N+½)ζ}` factor enters unreduced).
pub fn log_leading(crit: &CriticalData, n: u32) -> ComplexValue {
    let k = n as f64 + 0.5;
    let sign = if (crit.p + 1).rem_euclid(2) == 0 { 0.0 } else { PI };
    let mut l = Complex64::new((4.0 * PI).ln() + 0.5 * k.ln() - (PI / (2 * n + 1) as f64).sin().ln(), PI / 4.0 + sign);
    l += clog(crit.omega);
    l + crit.zeta * k
}

/// `log A_N` including the `κ` corrections.
pub fn log_approximant(model: &AsymptoticModel, n: u32) -> ComplexValue {
    log_leading(&model.crit, n) + clog(model.correction(n))
}

/// `A_N`; overflows to infinity once `(N+½)ζ_R` exceeds the double range
/// (use [`log_approximant`] then).
pub fn approximant(model: &AsymptoticModel, n: u32) -> ComplexValue {
    log_approximant(model, n).exp()
}

/// `(log|J_N|, arg J_N)`, in extended precision above [`EXTENDED_ABOVE_N`]
/// or whenever the machine-precision error estimate is too large.
pub fn jones_log(spec: &KnotSpec, cfg: &NumericsConfig) -> Result<(f64, f64)> {
    let mode = if spec.n > EXTENDED_ABOVE_N { PrecisionMode::Extended } else { cfg.precision_mode };
    let (_, mut jv) = jones_exact_in(spec, mode);
    if mode == PrecisionMode::MachineDouble && jv.rel_error_bound > 1e-9 {
        jv = jones_exact_in(spec, PrecisionMode::Extended).1;
    }
    if !jv.log_abs.is_finite() {
        return Err(Error::Overflow(format!("log|J_N| not finite for p = {}, N = {}", spec.p, spec.n)));
    }
    Ok((jv.log_abs, jv.arg))
}

/// `r_N = J_N / A_N^{(κ-free)}`, formed in log space.
pub fn ratio(crit: &CriticalData, n: u32, cfg: &NumericsConfig) -> Result<ComplexValue> {
    let spec = KnotSpec::new(crit.p, n)?;
    let (la, arg) = jones_log(&spec, cfg)?;
    let d = Complex64::new(la, arg) - log_leading(crit, n);
    Ok(Complex64::from_polar(d.re.exp(), d.im))
}

/// Ratios for several colours, evaluated in parallel.
pub fn ratios(crit: &CriticalData, ns: &[u32], cfg: &NumericsConfig) -> Result<Vec<ComplexValue>> {
    ns.par_iter().map(|&n| ratio(crit, n, cfg)).collect()
}

/// Complex least squares `min ‖A x − b‖` by modified Gram–Schmidt, returning
/// `x` and the condition estimate `‖R‖_F ‖R⁻¹‖_F` of the column-scaled matrix.
fn least_squares(a: &[Vec<ComplexValue>], b: &[ComplexValue]) -> Result<(Vec<ComplexValue>, f64)> {
    let m = b.len();
    let d = a.first().map_or(0, |r| r.len());
    if d == 0 {
        return Ok((Vec::new(), 1.0));
    }
    // columns, scaled to unit norm
    let mut q: Vec<Vec<ComplexValue>> = (0..d).map(|j| (0..m).map(|i| a[i][j]).collect()).collect();
    let scale: Vec<f64> = q.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    for (c, s) in q.iter_mut().zip(&scale) {
        if *s == 0.0 {
            return Err(Error::Fitting("zero column in the fitting matrix".into()));
        }
        c.iter_mut().for_each(|z| *z /= *s);
    }
    let mut r = vec![vec![Complex64::new(0.0, 0.0); d]; d];
    for j in 0..d {
        for k in 0..j {
            let dot: ComplexValue = q[k].iter().zip(&q[j]).map(|(a, b)| a.conj() * b).sum();
            r[k][j] = dot;
            let qk = q[k].clone();
            q[j].iter_mut().zip(&qk).for_each(|(z, w)| *z -= dot * w);
        }
        let nrm = q[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if nrm == 0.0 {
            return Err(Error::Fitting("rank-deficient fitting matrix".into()));
        }
        r[j][j] = Complex64::new(nrm, 0.0);
        q[j].iter_mut().for_each(|z| *z /= nrm);
    }
    // R⁻¹ by back substitution, column by column
    let mut rinv = vec![vec![Complex64::new(0.0, 0.0); d]; d];
    for c in 0..d {
        for i in (0..d).rev() {
            let mut acc = if i == c { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            for k in i + 1..d {
                acc -= r[i][k] * rinv[k][c];
            }
            rinv[i][c] = acc / r[i][i];
        }
    }
    let fro = |m: &Vec<Vec<ComplexValue>>| m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let cond = fro(&r) * fro(&rinv);
    let qtb: Vec<ComplexValue> = q.iter().map(|c| c.iter().zip(b).map(|(a, b)| a.conj() * b).sum()).collect();
    let mut x = vec![Complex64::new(0.0, 0.0); d];
    for i in (0..d).rev() {
        let mut acc = qtb[i];
        for k in i + 1..d {
            acc -= r[i][k] * x[k];
        }
        x[i] = acc / r[i][i];
    }
    Ok((x.iter().zip(&scale).map(|(v, s)| v / s).collect(), cond))
}

/// Fits `r_N ≈ 1 + Σ_{i=1}^{d} κ_i u^i`, `u = 2πi/(N+½)`, in the least-squares
/// sense over `n_samples`.
pub fn fit_kappas_with(
    crit: &CriticalData,
    n_samples: &[u32],
    d: usize,
    cfg: &NumericsConfig,
) -> Result<AsymptoticModel> {
    if n_samples.len() < d + 2 {
        return Err(Error::Fitting(format!("{} samples cannot determine {d} coefficients (need d + 2)", n_samples.len())));
    }
    let mut sorted = n_samples.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != n_samples.len() {
        return Err(Error::Fitting("sample colours must be distinct".into()));
    }
    let rs = ratios(crit, n_samples, cfg)?;
    let a: Vec<Vec<ComplexValue>> = n_samples
        .iter()
        .map(|&n| {
            let u = expansion_variable(n);
            (1..=d as i32).map(|i| u.powi(i)).collect()
        })
        .collect();
    let b: Vec<ComplexValue> = rs.iter().map(|r| r - 1.0).collect();
    let (kappas, cond) = least_squares(&a, &b)?;
    if cond > MAX_FIT_CONDITION {
        return Err(Error::Fitting(format!(
            "condition number {cond:e} exceeds {MAX_FIT_CONDITION:e}; use fewer coefficients or a wider N spread"
        )));
    }
    let mut model = AsymptoticModel::kappa_free(*crit);
    model.kappas = kappas;
    model.fit_residual = n_samples
        .iter()
        .zip(&rs)
        .map(|(&n, r)| (model.correction(n) - r).norm())
        .fold(0.0, f64::max);
    Ok(model)
}

/// [`fit_kappas_with`] after solving the critical point of `K_p`.
pub fn fit_kappas(p: i64, n_samples: &[u32], d: usize, cfg: &NumericsConfig) -> Result<AsymptoticModel> {
    fit_kappas_with(&solve_critical(p, cfg)?, n_samples, d, cfg)
}

/// `|r_N − (1 + Σ κ_i u^i)|` for a fitted model at a (possibly held-out) colour.
pub fn model_residual(model: &AsymptoticModel, n: u32, cfg: &NumericsConfig) -> Result<f64> {
    Ok((ratio(&model.crit, n, cfg)? - model.correction(n)).norm())
}

/// One row of a growth-rate table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: u32,
    /// `(2π/(N+½)) log|J_N|`.
    pub re_log_j_scaled: f64,
    /// `(2π/(N+½)) arg J_N`, principal argument.
    pub im_log_j_scaled: f64,
    /// `2πζ_R(p)`.
    pub target: f64,
    /// `re_log_j_scaled − target`.
    pub gap: f64,
}

/// Growth-rate table `(2π/(N+½)) log J_N` against `2πζ_R(p)`.
pub fn convergence_experiment(p: i64, ns: &[u32], cfg: &NumericsConfig) -> Result<Vec<ConvergenceRow>> {
    if p < 6 {
        return Err(Error::domain("convergence_experiment", format!("p = {p}: need p ≥ 6")));
    }
    let target = TAU * solve_critical(p, cfg)?.zeta_r;
    ns.par_iter()
        .map(|&n| {
            let (la, arg) = jones_log(&KnotSpec::new(p, n)?, cfg)?;
            let k = n as f64 + 0.5;
            let re = TAU * la / k;
            Ok(ConvergenceRow { n, re_log_j_scaled: re, im_log_j_scaled: TAU * arg / k, target, gap: re - target })
        })
        .collect()
}
