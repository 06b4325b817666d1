//! The exact Jones sum against a naive transcription of the double sum, and
//! against known Jones polynomials of small twist knots.

use std::f64::consts::PI;

use num_complex::Complex64;
use twist_core::jones::{jones_exact, jones_exact_in};
use twist_core::numerics::I;
use twist_core::{KnotSpec, NumericsConfig, PrecisionMode};

/// `q^a` at `q = ξ_N`, for rational exponents.
fn qpow(n: u32, a: f64) -> Complex64 {
    (I * 2.0 * PI * a / (n as f64 + 0.5)).exp()
}

fn bracket(n: u32, m: i64) -> Complex64 {
    qpow(n, m as f64 / 2.0) - qpow(n, -(m as f64) / 2.0)
}

fn bracket_factorial(n: u32, m: i64) -> Complex64 {
    (1..=m).map(|j| bracket(n, j)).product()
}

/// Direct evaluation of the double sum, term by term in plain complex arithmetic.
fn naive_jones(p: i64, n: u32) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n as i64 {
        for l in 0..=k {
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            let phase = qpow(n, (k * (k + 3)) as f64 / 4.0 + (p * l * (l + 1)) as f64);
            let ratio = bracket_factorial(n, k) * bracket(n, 2 * l + 1)
                / (bracket_factorial(n, k + l + 1) * bracket_factorial(n, k - l));
            let prod: Complex64 = (1..=k).map(|i| bracket(n, n as i64 + i) * bracket(n, n as i64 - i)).product();
            acc += phase * ratio * prod * sign;
        }
    }
    acc
}

#[test]
fn exact_sum_matches_naive_transcription() {
    let cfg = NumericsConfig::default();
    for p in [-3, -1, 1, 2, 6, 11] {
        for n in 1..=8u32 {
            let spec = KnotSpec::new(p, n).unwrap();
            let exact = jones_exact(&spec, &cfg).unwrap().value;
            let naive = naive_jones(p, n);
            assert!((exact - naive).norm() <= 1e-10 * naive.norm().max(1.0), "p={p} N={n}: {exact} vs {naive}");
        }
    }
}

#[test]
fn first_colour_is_trivial() {
    let cfg = NumericsConfig::default();
    for p in [-2, 1, 6, 40] {
        let v = jones_exact(&KnotSpec::new(p, 1).unwrap(), &cfg).unwrap().value;
        assert!((v - 1.0).norm() < 1e-14, "p={p}: {v}");
    }
}

#[test]
fn second_colour_is_the_jones_polynomial() {
    let cfg = NumericsConfig::default();
    let q = qpow(2, 1.0);
    // figure-eight knot: amphichiral, so the mirror convention does not matter
    let fig8 = q.powi(-2) - q.inv() + 1.0 - q + q * q;
    let j = jones_exact(&KnotSpec::new(-1, 2).unwrap(), &cfg).unwrap().value;
    assert!((j - fig8).norm() < 1e-12, "{j} vs {fig8}");
    // trefoil: one of the two mirror images
    let trefoil = |t: Complex64| -t.powi(-4) + t.powi(-3) + t.inv();
    let j = jones_exact(&KnotSpec::new(1, 2).unwrap(), &cfg).unwrap().value;
    let d = (j - trefoil(q)).norm().min((j - trefoil(q.inv())).norm());
    assert!(d < 1e-12, "{j}");
}

#[test]
fn extended_and_machine_modes_agree_where_both_are_accurate() {
    for n in [20u32, 60, 120] {
        let spec = KnotSpec::new(6, n).unwrap();
        let (_, a) = jones_exact_in(&spec, PrecisionMode::MachineDouble);
        let (_, b) = jones_exact_in(&spec, PrecisionMode::Extended);
        assert!((a.log_abs - b.log_abs).abs() < 1e-9, "N={n}");
        assert!((a.arg - b.arg).abs() < 1e-9, "N={n}");
        assert!(b.rel_error_bound <= a.rel_error_bound);
    }
}

#[test]
fn growth_rate_near_volume_at_hundred() {
    let spec = KnotSpec::new(6, 100).unwrap();
    let cfg = NumericsConfig::default().with_precision(PrecisionMode::Extended);
    let j = jones_exact(&spec, &cfg).unwrap();
    let rate = j.log_abs / spec.level();
    assert!((rate - 3.5889 / (2.0 * PI)).abs() <= 0.15, "{rate}");
}
