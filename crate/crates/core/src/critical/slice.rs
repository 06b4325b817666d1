//! The slice `s = c` real: the partial critical point `T₁(c)` of `t ↦ V(p, t, c)`
//! and the function `h(c) = Λ(c/2) + Λ(1/2 − c/2)` describing `Re V` along it.

use num_complex::Complex64;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::numerics::{clog, ComplexValue, I, TAU};
use crate::polylog::lobachevsky;
use crate::potential::{grad_v, v, PotentialPoint};

const PI: f64 = std::f64::consts::PI;

/// `T₁(c) = 1 + log(1 − 2i sin πc)/(2πi)`.
pub fn slice_critical_t1(c: f64) -> ComplexValue {
    Complex64::new(1.0, 0.0) + clog(Complex64::new(1.0, -2.0 * (PI * c).sin())) / (I * TAU)
}

/// `∂V/∂t (p, T₁(c), c)`; vanishes for `c ∈ [1/2, 1)`.
pub fn slice_gradient_t(p: i64, c: f64) -> Result<ComplexValue> {
    Ok(grad_v(p, &PotentialPoint::new(slice_critical_t1(c), Complex64::new(c, 0.0)))?[0])
}

/// `Re V(p, T₁(c), c)`. The real part of the Fourier shift `−2πi(mt+ns)`
/// vanishes for `m = 0` and real `s`, so the value is the same for every `n`.
pub fn slice_re_v(p: i64, c: f64) -> Result<f64> {
    Ok(v(p, &PotentialPoint::new(slice_critical_t1(c), Complex64::new(c, 0.0)))?.re)
}

/// `h(c) = Λ(c/2) + Λ(1/2 − c/2)`.
pub fn h_value(c: f64) -> f64 {
    lobachevsky(c / 2.0) + lobachevsky(0.5 - c / 2.0)
}

/// `2(Λ(c/2) + Λ(1/2 − c/2)) = 2h(c)`.
pub fn slice_value_plus(c: f64) -> f64 {
    2.0 * h_value(c)
}

/// `2(Λ(c/2) − Λ(1/2 − c/2))`.
pub fn slice_value_minus(c: f64) -> f64 {
    2.0 * (lobachevsky(c / 2.0) - lobachevsky(0.5 - c / 2.0))
}

/// `a_k = |E_{2k}|/(2k)!`, the Taylor coefficients of `sec x`, from
/// `sec · cos = 1`. Each step loses at most a few ulps.
static SEC_COEFFS: Lazy<Vec<f64>> = Lazy::new(|| {
    const TERMS: usize = 120;
    let mut inv_fact = vec![1.0f64; 2 * TERMS + 1];
    for j in 1..inv_fact.len() {
        inv_fact[j] = inv_fact[j - 1] / j as f64;
    }
    let mut a = vec![1.0f64];
    for k in 1..TERMS {
        let mut acc = 0.0;
        for j in 0..k {
            let sign = if (k - j) % 2 == 1 { 1.0 } else { -1.0 };
            acc += sign * a[j] * inv_fact[2 * (k - j)];
        }
        a.push(acc);
    }
    a
});

/// Truncated series `h(c) ≈ 2Λ(1/4) − (1/2π) Σ_{k<terms} |E_{2k}| X^{2k+2}/(2k+2)!`,
/// `X = π(c − 1/2)`, valid for `|c − 1/2| < 1/2`. Returns an error if more
/// than the tabulated number of terms is requested.
pub fn h_series(c: f64, terms: usize) -> Result<f64> {
    let x = PI * (c - 0.5);
    if x.abs() >= PI / 2.0 {
        return Err(Error::domain("h_series", format!("c = {c}: the series needs |c − 1/2| < 1/2")));
    }
    let coeffs = &*SEC_COEFFS;
    if terms > coeffs.len() {
        return Err(Error::domain("h_series", format!("at most {} terms are tabulated", coeffs.len())));
    }
    // |E_{2k}| X^{2k+2}/(2k+2)! = a_k X^{2k+2} / ((2k+1)(2k+2))
    let x2 = x * x;
    let mut pow = x2;
    let mut sum = 0.0;
    for (k, a) in coeffs.iter().take(terms).enumerate() {
        let d = ((2 * k + 1) * (2 * k + 2)) as f64;
        sum += a * pow / d;
        pow *= x2;
    }
    Ok(2.0 * lobachevsky(0.25) - sum / TAU)
}

/// Root `c(p) ∈ [1/2, 1)` of `2h(c) = ζ_R(p)`, i.e. of `Re V(p, T₁(c), c) = ζ_R(p)`.
pub fn slice_c(zeta_r: f64) -> Result<f64> {
    let f = |c: f64| slice_value_plus(c) - zeta_r;
    let (mut lo, mut hi) = (0.5, 1.0 - 1e-12);
    if f(lo) < 0.0 {
        return Err(Error::domain("slice_c", format!("ζ_R = {zeta_r} exceeds the slice maximum 4Λ(1/4)")));
    }
    if f(hi) > 0.0 {
        return Err(Error::domain("slice_c", format!("ζ_R = {zeta_r} below the slice range")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}
