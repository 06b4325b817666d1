//! The Lobachevsky function `Λ(t) = −∫₀^t log|2 sin πτ| dτ` (odd, period 1).

use super::li2::ZETA_EVEN;
use crate::numerics::sum::NeumaierSum;

/// Clausen function `Cl₂(θ) = Im Li₂(e^{iθ}) = −∫₀^θ log|2 sin(τ/2)| dτ`.
///
/// Uses the expansion `Cl₂(θ) = θ − θ log|θ| + Σ_{k≥1} ζ(2k)/(k(2k+1)) · θ (θ/2π)^{2k}`
/// after reducing `θ` to `(−π, π]`.
pub fn clausen2(theta: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let th = theta - tau * (theta / tau).round();
    if th == 0.0 {
        return 0.0;
    }
    let x2 = (th / tau) * (th / tau);
    let mut acc = NeumaierSum::new();
    acc.add(th);
    acc.add(-th * th.abs().ln());
    let mut pw = th;
    for (k0, z) in ZETA_EVEN.iter().enumerate() {
        let k = (k0 + 1) as f64;
        pw *= x2;
        let term = z / (k * (2.0 * k + 1.0)) * pw;
        acc.add(term);
        if term.abs() < 1e-18 * th.abs() {
            break;
        }
    }
    acc.value()
}

/// Lobachevsky function `Λ(t) = Cl₂(2πt)/(2π)`.
pub fn lobachevsky(t: f64) -> f64 {
    let tr = t - t.round();
    if tr == 0.0 || tr.abs() == 0.5 {
        return 0.0;
    }
    clausen2(std::f64::consts::TAU * tr) / std::f64::consts::TAU
}

/// Λ via its sine series `Σ sin(2πnt)/(2πn²)` truncated after `terms` terms
/// (slowly convergent; provided as an independent cross-check).
pub fn lobachevsky_fourier(t: f64, terms: usize) -> f64 {
    let tr = t - t.round();
    let mut acc = NeumaierSum::new();
    for n in 1..=terms {
        let nf = n as f64;
        acc.add((std::f64::consts::TAU * nf * tr).sin() / (nf * nf));
    }
    acc.value() / (2.0 * std::f64::consts::PI)
}

/// Catalan's constant `G = 2πΛ(1/4)`.
pub const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_1;

/// Volume of the regular ideal octahedron, `v₈ = 8Λ(1/4)·π = 4G`.
pub const V8: f64 = 4.0 * CATALAN;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::quad::integrate_interval;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn quad_reference(t: f64) -> f64 {
        // −∫₀^t log|2 sin πτ| dτ; the log singularity at 0 is integrable
        integrate_interval(
            |tau| Complex64::new(-(2.0 * (std::f64::consts::PI * tau).sin()).abs().ln(), 0.0),
            0.0,
            t,
            1e-14,
            1e-14,
            4000,
        )
        .unwrap()
        .value
        .re
    }

    #[test]
    fn special_values() {
        assert_eq!(lobachevsky(0.5), 0.0);
        assert_eq!(lobachevsky(1.0), 0.0);
        assert_eq!(lobachevsky(0.0), 0.0);
        assert_abs_diff_eq!(lobachevsky(0.25), CATALAN / std::f64::consts::TAU, epsilon = 1e-15);
        assert_abs_diff_eq!(lobachevsky(0.25), 0.145_780_452_015_409_4, epsilon = 1e-15);
        assert_abs_diff_eq!(lobachevsky(1.25), lobachevsky(0.25), epsilon = 1e-15);
    }

    #[test]
    fn matches_quadrature_definition() {
        for t in [0.01, 0.1, 0.2, 0.3, 0.37, 0.45, 0.6, 0.8, 0.99] {
            assert_abs_diff_eq!(lobachevsky(t), quad_reference(t), epsilon = 1e-12);
        }
    }

    #[test]
    fn odd_and_periodic() {
        for k in 0..=400 {
            let t = -2.0 + 4.0 * k as f64 / 400.0 + 1e-3;
            assert_abs_diff_eq!(lobachevsky(t) + lobachevsky(-t), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(lobachevsky(t + 1.0) - lobachevsky(t), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn fourier_series_cross_check() {
        for t in [0.1, 0.25, 0.4, 0.7] {
            assert_abs_diff_eq!(lobachevsky_fourier(t, 100_000), lobachevsky(t), epsilon = 2e-6);
        }
    }

    #[test]
    fn octahedron_constant() {
        let v = 8.0 * std::f64::consts::PI * lobachevsky(0.25);
        assert_abs_diff_eq!(v, 3.66386, epsilon = 1e-4);
        assert_abs_diff_eq!(v, V8, epsilon = 1e-14);
    }
}
