//! Independent hyperbolic-geometry channel: the gluing equation of `S³ ∖ K_p`
//! in one shape parameter `w`, and `vol + i·cs` from the `R(U)` combination
//! `R(U) = ½ log U log(1 − U) + Li₂(U)`.
//!
//! The result is compared with the critical value through
//! `2πζ(p) ≡ vol + i·cs − (p+5)π²i  (mod π²i Z)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::critical::{seed_from_series, CriticalData};
use crate::error::{Error, Result};
use crate::numerics::{clog, csqrt, ComplexValue, NumericsConfig, I, TAU};
use crate::polylog::{li2, PI2_6};

const PI: f64 = std::f64::consts::PI;
const PI2: f64 = PI * PI;

/// Geometric solution of the gluing equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GluingSolution {
    pub p: i64,
    pub w0: ComplexValue,
    /// `vol + i·cs`, imaginary part reduced to `(−π²/2, π²/2]`.
    pub volcs: ComplexValue,
    /// `|gluing residual|` at `w0`.
    pub residual: f64,
    pub iterations: usize,
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// `L(w) = log(w − 1) + 2 log(−1/w) − log(−1/w − 1)`.
fn l_combination(w: ComplexValue) -> ComplexValue {
    let mw = -w.inv();
    clog(w - one()) + 2.0 * clog(mw) - clog(mw - one())
}

/// Gluing residual `L(w) + 3πi − 2p(2 log(−1/w) + πi)`; the geometric root
/// is where this vanishes.
pub fn gluing_residual(p: i64, w: ComplexValue) -> ComplexValue {
    let pi_i = I * PI;
    l_combination(w) + 3.0 * pi_i - 2.0 * p as f64 * (2.0 * clog(-w.inv()) + pi_i)
}

fn gluing_derivative(p: i64, w: ComplexValue) -> ComplexValue {
    (w - one()).inv() - 2.0 / w + (w * (w + one())).inv() + 4.0 * p as f64 / w
}

/// The twist parameter recovered from `w`:
/// `(L(w) + 3πi) / (2(2 log(−1/w) + πi))`.
pub fn twist_from_w(w: ComplexValue) -> ComplexValue {
    (l_combination(w) + 3.0 * I * PI) / (2.0 * (2.0 * clog(-w.inv()) + I * PI))
}

/// `x = w − 1/w + 1`, the `x`-coordinate of the critical point attached to `w`.
pub fn x_from_w(w: ComplexValue) -> ComplexValue {
    w - w.inv() + one()
}

/// The shape parameter associated with a critical point: `w = −1/√y₀`.
pub fn w_from_critical(crit: &CriticalData) -> ComplexValue {
    -csqrt(crit.y0).inv()
}

fn r_fn(u: ComplexValue) -> Result<ComplexValue> {
    let lu = clog(u);
    let l1 = clog(one() - u);
    let d = li2(u).map_err(|_| Error::branch("vol_cs_from_w", format!("Li₂ argument {u} on the cut (1, ∞)")))?;
    Ok(0.5 * lu * l1 + d)
}

/// `Σ R(U)` over `U ∈ {w, −1/w, 1/(1−w), w/(w+1)}`.
fn r_sum(w: ComplexValue) -> Result<ComplexValue> {
    Ok(r_fn(w)? + r_fn(-w.inv())? + r_fn((one() - w).inv())? + r_fn(w / (w + one()))?)
}

/// Reduces the imaginary part of `z` mod `π²` to `(−π²/2, π²/2]`.
pub fn reduce_mod_pi2(z: ComplexValue) -> ComplexValue {
    let k = (z.im / PI2).round();
    let mut im = z.im - k * PI2;
    if im <= -PI2 / 2.0 {
        im += PI2;
    }
    Complex64::new(z.re, im)
}

/// Unreduced `i ΣR(U) − (π/2)(2πi + 2πi/p + (L(w) + πi)/p)`.
pub fn vol_cs_raw(p: i64, w0: ComplexValue) -> Result<ComplexValue> {
    let pf = p as f64;
    let corr = I * TAU + I * TAU / pf + (l_combination(w0) + I * PI) / pf;
    Ok(I * r_sum(w0)? - 0.5 * PI * corr)
}

/// `vol + i·cs` at `w0`, reduced mod `π²i` (see [`reduce_mod_pi2`]).
pub fn vol_cs_from_w(p: i64, w0: ComplexValue) -> Result<ComplexValue> {
    if p == 0 {
        return Err(Error::domain("vol_cs_from_w", "p must be nonzero"));
    }
    Ok(reduce_mod_pi2(vol_cs_raw(p, w0)?))
}

/// `F(w) = i ΣR(U) − π(−πi + (2πi + L + πi)(2 log(−1/w) + πi)/(3πi + L))`, the
/// `p`-free form of `vol + i·cs + 2π²i` obtained by eliminating `p` on the gluing variety.
pub fn f_expression(w: ComplexValue) -> Result<ComplexValue> {
    let l = l_combination(w);
    let pi_i = I * PI;
    Ok(I * r_sum(w)? - PI * (-pi_i + (2.0 * pi_i + l + pi_i) * (2.0 * clog(-w.inv()) + pi_i) / (3.0 * pi_i + l)))
}

/// `G(w)`: `2π(V(t₀,s₀) + (p+7)πi/2)` written in `w` via `x = w − 1/w + 1`, `y = 1/w²`.
pub fn g_expression(w: ComplexValue) -> Result<ComplexValue> {
    let x = x_from_w(w);
    let w2 = w * w;
    let lw = clog(w);
    let lix = |z: ComplexValue| li2(z).map_err(|_| Error::branch("g_expression", format!("Li₂ argument {z} on the cut")));
    let a = PI * (-2.0 * clog(x) + 2.0 * lw + 1.5 * I * PI);
    let b = PI * (-lw / (I * PI) - 0.5) * (clog(one() - x / w2) - clog(one() - x * w2));
    let c = (Complex64::new(PI2_6, 0.0) - 3.0 * lix(x)? + lix(x / w2)? + lix(x * w2)?) / I;
    Ok(a + b + c)
}

/// `(Im 2πζ + (p+5)π² − Im volcs)/π²`; an integer when the two channels agree.
pub fn mod_pi2_residue(p: i64, two_pi_zeta: ComplexValue, volcs: ComplexValue) -> f64 {
    (two_pi_zeta.im + (p + 5) as f64 * PI2 - volcs.im) / PI2
}

/// Newton solve of the gluing equation from the series seed
/// `w = −1/√(e^{2πi s(1/p)})`, then cross-checked against the critical
/// point: the root must equal `−1/√y₀`.
pub fn solve_gluing(p: i64, crit: &CriticalData, cfg: &NumericsConfig) -> Result<GluingSolution> {
    if p < 2 {
        return Err(Error::domain("solve_gluing", format!("p = {p}: need p ≥ 2")));
    }
    if crit.p != p {
        return Err(Error::domain("solve_gluing", format!("critical data is for p = {}, not {p}", crit.p)));
    }
    let seed_s = if p >= 6 { seed_from_series(p)[1] } else { crit.s0 };
    let mut w = -csqrt((I * TAU * seed_s).exp()).inv();
    let mut iterations = 0;
    let mut res = gluing_residual(p, w).norm();
    while iterations < cfg.newton_max_iter && res > cfg.newton_tol {
        let step = gluing_residual(p, w) / gluing_derivative(p, w);
        let mut lambda = 1.0;
        loop {
            let cand = w - step * lambda;
            let r = gluing_residual(p, cand).norm();
            if r < res || lambda < 1e-6 {
                w = cand;
                res = r;
                break;
            }
            lambda *= 0.5;
        }
        iterations += 1;
    }
    if res > cfg.newton_tol.max(1e-11) || !res.is_finite() {
        return Err(Error::NonConvergence { iterations, residual: res, last: [w, Complex64::new(0.0, 0.0)] });
    }
    let expected = w_from_critical(crit);
    if (w - expected).norm() > 1e-8 * expected.norm() {
        return Err(Error::Consistency(format!(
            "gluing root {w} does not match −1/√y₀ = {expected} from the critical point"
        )));
    }
    Ok(GluingSolution { p, w0: w, volcs: vol_cs_from_w(p, w)?, residual: res, iterations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical::solve_critical;

    fn setup(p: i64) -> (CriticalData, GluingSolution) {
        let cfg = NumericsConfig::default();
        let c = solve_critical(p, &cfg).unwrap();
        let g = solve_gluing(p, &c, &cfg).unwrap();
        (c, g)
    }

    #[test]
    fn p100_example() {
        let (c, g) = setup(100);
        assert!((x_from_w(g.w0) - c.x0).norm() < 1e-10);
        let r = csqrt(c.y0);
        assert!((r - r.inv() + 1.0 - c.x0).norm() < 1e-10);
        assert!((g.volcs.re - 3.6636144).abs() < 1e-5);
        assert!((twist_from_w(g.w0) - 100.0).norm() < 1e-9);
    }

    #[test]
    fn channels_agree() {
        for p in 6..=50 {
            let (c, g) = setup(p);
            let z = c.two_pi_zeta();
            assert!((z.re - g.volcs.re).abs() < 1e-8, "p={p}");
            let res = mod_pi2_residue(p, z, g.volcs);
            assert!((res - res.round()).abs() < 1e-8, "p={p}: {res}");
        }
    }

    #[test]
    fn f_equals_g() {
        for p in 6..=20 {
            let (c, g) = setup(p);
            let f = f_expression(g.w0).unwrap();
            let gg = g_expression(g.w0).unwrap();
            assert!((f - gg).norm() < 1e-8, "p={p}: {f} vs {gg}");
            let target = TAU * (c.zeta + (p + 7) as f64 * PI * I / 2.0);
            assert!((reduce_mod_pi2(gg) - reduce_mod_pi2(target)).norm() < 1e-8);
        }
    }

    #[test]
    fn p6_volume_and_monotone_approach() {
        let (_, g) = setup(6);
        assert!((g.volcs.re - 3.5889).abs() < 1e-3);
        let vols: Vec<f64> = (6..=40).map(|p| setup(p).1.volcs.re).collect();
        for w in vols.windows(2) {
            assert!(w[1] > w[0] && w[1] < crate::polylog::V8);
        }
    }

    #[test]
    fn mismatched_data_is_rejected() {
        let cfg = NumericsConfig::default();
        let c = solve_critical(10, &cfg).unwrap();
        assert!(solve_gluing(11, &c, &cfg).is_err());
        assert!(solve_gluing(1, &c, &cfg).is_err());
        let mut bad = c;
        bad.y0 = -bad.y0.conj();
        assert!(matches!(solve_gluing(10, &bad, &cfg), Err(Error::Consistency(_))));
    }
}
