//! Shared fixtures for the benchmarks.

use twist_core::{KnotSpec, NumericsConfig, PrecisionMode};

/// Colours benchmarked for the exact sum in machine-double mode.
pub const MACHINE_COLOURS: [u32; 3] = [20, 40, 60];

/// Colours that need the double-double accumulator.
pub const EXTENDED_COLOURS: [u32; 2] = [100, 200];

/// Twist parameters for the critical-point solver.
pub const TWISTS: [i64; 3] = [6, 100, 1000];

pub fn spec(p: i64, n: u32) -> KnotSpec {
    KnotSpec::new(p, n).expect("benchmark specs are valid")
}

pub fn config(mode: PrecisionMode) -> NumericsConfig {
    NumericsConfig::default().with_precision(mode)
}
