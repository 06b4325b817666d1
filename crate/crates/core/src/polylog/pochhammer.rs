//! Quantum brackets, factorials and q-Pochhammer symbols at `q = ξ_N`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::qdilog::{phi_n, RootOfUnity};
use crate::error::{Error, Result};
use crate::numerics::{ComplexValue, NumericsConfig};

/// Bracket conventions `{n} = q^{n/2} − q^{−n/2}`, `(q)_n = Π_{i=1}^n (1 − q^i)`,
/// `{n}! = (−1)^n q^{−n(n+1)/4} (q)_n`.
///
/// The square root `q^{1/2}` is stored explicitly so that half-integer powers
/// are unambiguous.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BracketConvention {
    pub q_half: ComplexValue,
}

impl BracketConvention {
    pub fn new(q_half: ComplexValue) -> Self {
        BracketConvention { q_half }
    }

    /// Convention at `q = ξ_N` with `q^{1/2} = e^{2πi/(2N+1)}`.
    pub fn at_root(root: &RootOfUnity) -> Self {
        BracketConvention { q_half: root.xi_half() }
    }

    pub fn q(&self) -> ComplexValue {
        self.q_half * self.q_half
    }

    /// `q^{m/4}` for integer `m` (quarter powers through the stored square root).
    fn q_quarter_pow(&self, m: i64) -> ComplexValue {
        // q^{1/4} as the principal square root of q^{1/2} keeps the phase continuous
        let q_quarter = self.q_half.sqrt();
        q_quarter.powi(m as i32)
    }

    /// `{n}`.
    pub fn bracket(&self, n: i64) -> ComplexValue {
        let h = self.q_half.powi(n as i32);
        h - h.inv()
    }

    /// `(q)_n` by direct product.
    pub fn pochhammer(&self, n: u32) -> ComplexValue {
        let q = self.q();
        let mut acc = Complex64::new(1.0, 0.0);
        let mut qi = Complex64::new(1.0, 0.0);
        for _ in 0..n {
            qi *= q;
            acc *= Complex64::new(1.0, 0.0) - qi;
        }
        acc
    }

    /// `{n}!` by direct product of brackets.
    pub fn bracket_factorial(&self, n: u32) -> ComplexValue {
        (1..=n as i64).fold(Complex64::new(1.0, 0.0), |acc, i| acc * self.bracket(i))
    }

    /// `{n}!` through the Pochhammer form `(−1)^n q^{−n(n+1)/4} (q)_n`.
    pub fn bracket_factorial_via_pochhammer(&self, n: u32) -> ComplexValue {
        let n64 = n as i64;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        self.q_quarter_pow(-n64 * (n64 + 1)) * self.pochhammer(n) * sign
    }
}

/// `(ξ_N)_n` by direct product, `0 ≤ n ≤ 2N`.
pub fn q_pochhammer(root: &RootOfUnity, n: u32) -> Result<ComplexValue> {
    if n > 2 * root.n {
        return Err(Error::domain("q_pochhammer", format!("n = {n} exceeds 2N = {}", 2 * root.n)));
    }
    Ok(BracketConvention::at_root(root).pochhammer(n))
}

/// `(ξ_N)_n` through the quantum dilogarithm:
/// `exp(φ_N(1/(2N+1)) − φ_N((2n+1)/(2N+1)))` for `n ≤ N` and
/// `exp(φ_N(1/(2N+1)) − φ_N((2n+1)/(2N+1) − 1) + log 2)` for `N < n ≤ 2N`.
pub fn q_pochhammer_via_phi(root: &RootOfUnity, n: u32, cfg: &NumericsConfig) -> Result<ComplexValue> {
    if n > 2 * root.n {
        return Err(Error::domain("q_pochhammer_via_phi", format!("n = {n} exceeds 2N = {}", 2 * root.n)));
    }
    let h = root.spacing();
    let base = phi_n(root, Complex64::new(h, 0.0), cfg)?;
    let arg = (2 * n + 1) as f64 * h;
    if n <= root.n {
        Ok((base - phi_n(root, Complex64::new(arg, 0.0), cfg)?).exp())
    } else {
        Ok((base - phi_n(root, Complex64::new(arg - 1.0, 0.0), cfg)? + std::f64::consts::LN_2).exp())
    }
}
