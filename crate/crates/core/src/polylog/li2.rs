//! The dilogarithm on the cut plane `C ∖ (1, ∞)`.

use num_complex::Complex64;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::numerics::{clog, ComplexValue};

/// π²/6.
pub const PI2_6: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;

/// Number of even zeta values tabulated.
const ZETA_TERMS: usize = 40;

/// `ζ(2k)` for `k = 1..=ZETA_TERMS` (index `k − 1`).
pub(crate) static ZETA_EVEN: Lazy<[f64; ZETA_TERMS]> = Lazy::new(|| {
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    let mut z = [0.0; ZETA_TERMS];
    z[0] = pi2 / 6.0;
    z[1] = pi2 * pi2 / 90.0;
    z[2] = pi2 * pi2 * pi2 / 945.0;
    z[3] = pi2 * pi2 * pi2 * pi2 / 9450.0;
    for (k, zk) in z.iter_mut().enumerate().skip(4) {
        let s = 2.0 * (k + 1) as f64;
        // direct sum; the tail beyond n = 40 is below 40^{1−s} < 1e−15 for s ≥ 10
        let mut acc = 0.0;
        for n in (1..=40).rev() {
            acc += (n as f64).powf(-s);
        }
        *zk = acc;
    }
    z
});

/// Coefficients `B_{2k}/(2k+1)!` of the Bernoulli series, `k = 1..`.
static BERNOULLI_COEFFS: Lazy<[f64; ZETA_TERMS]> = Lazy::new(|| {
    let tau2 = (2.0 * std::f64::consts::PI).powi(2);
    let mut c = [0.0; ZETA_TERMS];
    let mut pw = 1.0;
    for k in 1..=ZETA_TERMS {
        pw *= tau2;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        c[k - 1] = sign * 2.0 * ZETA_EVEN[k - 1] / ((2 * k + 1) as f64 * pw);
    }
    c
});

/// Bernoulli series `Li₂(z) = Σ B_n u^{n+1}/(n+1)!`, `u = −log(1 − z)`,
/// accurate for `|z| ≤ 1`, `Re z ≤ 1/2` (then `|u| ≤ π/3`).
fn li2_bernoulli(z: ComplexValue) -> ComplexValue {
    let u = -clog(Complex64::new(1.0, 0.0) - z);
    let u2 = u * u;
    let mut sum = u - u2 * 0.25;
    let mut pw = u;
    for c in BERNOULLI_COEFFS.iter() {
        pw *= u2;
        let term = pw * *c;
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

/// Li₂ on the closed unit disk.
fn li2_disk(z: ComplexValue) -> ComplexValue {
    if z.re <= 0.5 {
        return li2_bernoulli(z);
    }
    let w = Complex64::new(1.0, 0.0) - z;
    if w.norm() == 0.0 {
        return Complex64::new(PI2_6, 0.0);
    }
    // reflection Li₂(z) = π²/6 − log z · log(1 − z) − Li₂(1 − z)
    Complex64::new(PI2_6, 0.0) - clog(z) * clog(w) - li2_bernoulli(w)
}

/// Dilogarithm `Li₂(z) = −∫₀^z log(1−x)/x dx`, principal branch.
///
/// Errors on the open cut `(1, ∞)`; `Li₂(1) = π²/6` is returned by continuity.
pub fn li2(z: ComplexValue) -> Result<ComplexValue> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain("li2", format!("non-finite argument {z}")));
    }
    if z.im == 0.0 && z.re > 1.0 {
        return Err(Error::branch("li2", format!("argument {} lies on the cut (1, ∞)", z.re)));
    }
    Ok(li2_unchecked(z))
}

/// Dilogarithm without the cut check (values on the cut are the limit from above
/// when `z.im == +0.0`).
pub fn li2_unchecked(z: ComplexValue) -> ComplexValue {
    if z.norm_sqr() <= 1.0 {
        return li2_disk(z);
    }
    // inversion Li₂(z) = −Li₂(1/z) − π²/6 − ½ log²(−z)
    let l = clog(-z);
    -li2_disk(z.inv()) - PI2_6 - l * l * 0.5
}
