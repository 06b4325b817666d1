//! Structure of the Fourier coefficients of the cut-off lattice sum.

use twist_core::critical::solve_critical;
use twist_core::fourier::{growth_rate, hhat, FourierConfig, FourierIntegrator};
use twist_core::potential::DEFAULT_BUMP_EPS;
use twist_core::{FourierIndex, KnotSpec, NumericsConfig};

#[test]
fn neglected_coefficients_grow_slower_than_the_volume() {
    let zeta_r = solve_critical(6, &NumericsConfig::default()).unwrap().zeta_r;
    for n in [10u32, 20] {
        let spec = KnotSpec::new(6, n).unwrap();
        let integ = FourierIntegrator::new(&spec, &FourierConfig::default()).unwrap();
        for m in [-2, 1] {
            let c = integ.coefficient(FourierIndex::new(m, 0)).unwrap();
            let rate = growth_rate(&c);
            assert!(rate <= zeta_r - 0.01, "N={n} m={m}: {rate} vs ζ_R = {zeta_r}");
        }
    }
}

#[test]
fn big_cancellation_for_every_m() {
    let spec = KnotSpec::new(7, 12).unwrap();
    let integ = FourierIntegrator::new(&spec, &FourierConfig::default()).unwrap();
    let scale = integ.coefficient(FourierIndex::ZERO).unwrap().value.norm();
    for m in -2..=2 {
        let c = integ.coefficient(FourierIndex::new(m, -1)).unwrap();
        assert!(c.value.norm() <= c.quad_error.max(1e-12 * scale), "m={m}: {} vs {}", c.value.norm(), c.quad_error);
        for n in [0, 3] {
            let a = integ.coefficient(FourierIndex::new(m, n)).unwrap();
            let b = integ.coefficient(FourierIndex::new(m, -n - 2)).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((b.value - a.value * sign).norm() <= a.quad_error + b.quad_error, "m={m} n={n}");
        }
    }
}

#[test]
fn coefficients_are_deterministic() {
    let spec = KnotSpec::new(6, 9).unwrap();
    let a = hhat(&spec, FourierIndex::new(0, 1), DEFAULT_BUMP_EPS).unwrap();
    let b = hhat(&spec, FourierIndex::new(0, 1), DEFAULT_BUMP_EPS).unwrap();
    assert_eq!(a.value, b.value);
    assert_eq!(a.quad_error, b.quad_error);
    assert_eq!((a.m, a.n, a.big_n, a.p), (0, 1, 9, 6));
}
