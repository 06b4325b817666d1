//! Exact evaluation of the normalized colored Jones polynomial of the twist
//! knot `K_p` at `ξ_N`, and its quantum-dilogarithm lattice representation.
//!
//! At `q = ξ_N` every bracket is `{n} = 2i·sin(2πn/(2N+1))`, so the double sum
//! `Σ_{k=0}^{N−1} Σ_{l=0}^{k} (−1)^l q^{k(k+3)/4 + pl(l+1)} {k}!{2l+1}/({k+l+1}!{k−l}!) Π_{i=1}^{k}{N+i}{N−i}`
//! splits into a real magnitude (a ratio of sine products) and a phase
//! `e^{πi r/(2(2N+1))}` with an exactly reduced integer `r`.

mod exact;
mod lattice;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polylog::RootOfUnity;

pub use exact::{jones_exact, jones_exact_in, ScaledComplex};
pub use lattice::{delta_region, g_sum, g_term, v_lattice_bound, LatticeSum};

/// A twist knot `K_p` together with the colour `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KnotSpec {
    pub p: i64,
    pub n: u32,
}

impl KnotSpec {
    pub fn new(p: i64, n: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::domain("KnotSpec", "twist parameter p must be nonzero"));
        }
        if n == 0 {
            return Err(Error::domain("KnotSpec", "N must be at least 1"));
        }
        Ok(KnotSpec { p, n })
    }

    pub fn root(&self) -> Result<RootOfUnity> {
        RootOfUnity::new(self.n)
    }

    /// `N + 1/2`.
    pub fn level(&self) -> f64 {
        self.n as f64 + 0.5
    }

    /// Number of terms `N(N+1)/2` of the double sum.
    pub fn term_count(&self) -> u64 {
        let n = self.n as u64;
        n * (n + 1) / 2
    }
}

/// Value of `J_N(K_p; ξ_N)` with its logarithmic magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JonesValue {
    /// The value; infinite components only if `|J_N|` exceeds the double range
    /// (use `log_abs` and `arg` then).
    pub value: crate::ComplexValue,
    /// `log |J_N|`.
    pub log_abs: f64,
    /// `arg J_N ∈ (−π, π]`.
    pub arg: f64,
    pub term_count: u64,
    /// Ratio `Σ|term| / |J_N|` (size of the cancellation in the sum).
    pub cancellation: f64,
    /// Estimated relative rounding error of the sum.
    pub rel_error_bound: f64,
}
