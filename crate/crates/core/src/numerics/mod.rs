//! Precision configuration, principal-branch elementary functions, quadrature
//! engines, compensated summation and a damped Newton solver.

pub mod dd;
pub mod newton;
pub mod quad;
pub mod sum;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use dd::{Dd, Real};
pub use newton::{newton_solve_2d, Jacobian2};
pub use quad::{
    gauss_legendre, integrate_contour, integrate_interval, integrate_rect2d, ContourPieces,
    QuadResult, Rect,
};
pub use sum::{ComplexSum, NeumaierSum};

/// Complex scalar used for every analytic quantity of the engine.
pub type ComplexValue = Complex64;

/// The imaginary unit.
pub const I: ComplexValue = Complex64::new(0.0, 1.0);

/// 2π.
pub const TAU: f64 = std::f64::consts::TAU;

/// Environment variable selecting the default [`PrecisionMode`].
pub const PRECISION_ENV: &str = "TWIST_PRECISION";

/// Arithmetic backend used where cancellation matters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum PrecisionMode {
    /// IEEE double precision.
    #[default]
    MachineDouble,
    /// Double-double (about 32 significant digits).
    Extended,
}

impl PrecisionMode {
    /// Reads the default mode from [`PRECISION_ENV`], falling back to machine double.
    pub fn from_env() -> Self {
        std::env::var(PRECISION_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or_default()
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            PrecisionMode::MachineDouble => "machine-double",
            PrecisionMode::Extended => "extended",
        }
    }
}

impl fmt::Display for PrecisionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PrecisionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "machine-double" | "double" | "f64" | "machine" => Ok(PrecisionMode::MachineDouble),
            "extended" | "double-double" | "dd" => Ok(PrecisionMode::Extended),
            other => Err(Error::domain(
                "precision",
                format!("unknown precision mode `{other}` (expected machine-double or extended)"),
            )),
        }
    }
}

/// Tolerances and budgets shared by the solvers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericsConfig {
    pub precision_mode: PrecisionMode,
    pub quad_abs_tol: f64,
    pub quad_rel_tol: f64,
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    /// Radius of the semicircle joining the two real rays of the φ_N contour.
    pub contour_radius: f64,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        NumericsConfig {
            precision_mode: PrecisionMode::from_env(),
            quad_abs_tol: 1e-13,
            quad_rel_tol: 1e-13,
            newton_tol: 1e-13,
            newton_max_iter: 60,
            contour_radius: 1.0,
        }
    }
}

impl NumericsConfig {
    /// Returns the configuration with the given precision mode.
    pub fn with_precision(mut self, mode: PrecisionMode) -> Self {
        self.precision_mode = mode;
        self
    }

    /// Checks the invariants (positive tolerances, at least one iteration).
    pub fn validate(&self) -> Result<()> {
        let tols = [self.quad_abs_tol, self.quad_rel_tol, self.newton_tol, self.contour_radius];
        if tols.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(Error::domain("config", "tolerances and radius must be positive"));
        }
        if self.newton_max_iter == 0 {
            return Err(Error::domain("config", "newton_max_iter must be at least 1"));
        }
        Ok(())
    }
}

/// Principal logarithm `log|z| + i arg z` with `arg z ∈ (−π, π]`.
pub fn principal_log(z: ComplexValue) -> Result<ComplexValue> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::domain("principal_log", "logarithm of zero"));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain("principal_log", format!("non-finite argument {z}")));
    }
    Ok(clog(z))
}

/// Infallible principal logarithm for callers that have already excluded zero.
///
/// The imaginary part of `−x + (−0)i` is mapped to `+π` so the branch stays in `(−π, π]`.
#[inline]
pub fn clog(z: ComplexValue) -> ComplexValue {
    let im = if z.im == 0.0 && z.re < 0.0 { std::f64::consts::PI } else { z.im.atan2(z.re) };
    Complex64::new(z.norm().ln(), im)
}

/// Principal square root consistent with [`clog`].
#[inline]
pub fn csqrt(z: ComplexValue) -> ComplexValue {
    if z.im == 0.0 && z.re < 0.0 {
        return Complex64::new(0.0, (-z.re).sqrt());
    }
    z.sqrt()
}

/// `e^{2πi t}`.
#[inline]
pub fn e2pi(t: ComplexValue) -> ComplexValue {
    (I * TAU * t).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn log_of_one_and_minus_one() {
        assert_eq!(principal_log(Complex64::new(1.0, 0.0)).unwrap(), Complex64::new(0.0, 0.0));
        let l = principal_log(Complex64::new(-1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(l.im, std::f64::consts::PI);
        let l = principal_log(Complex64::new(-1.0, -0.0)).unwrap();
        assert_abs_diff_eq!(l.im, std::f64::consts::PI);
    }

    #[test]
    fn log_oracle_value() {
        // half-log of the modulus squared and atan2
        let l = principal_log(Complex64::new(1.0, -2.0)).unwrap();
        assert_abs_diff_eq!(l.re, 0.5 * 5f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(l.im, (-2f64).atan2(1.0), epsilon = 1e-15);
        assert_abs_diff_eq!(l.re, 0.80472, epsilon = 1e-5);
        assert_abs_diff_eq!(l.im, -1.10715, epsilon = 1e-5);
    }

    #[test]
    fn log_of_zero_is_an_error() {
        assert!(matches!(principal_log(Complex64::new(0.0, 0.0)), Err(Error::Domain { .. })));
    }

    #[test]
    fn exp_log_roundtrip_on_annulus() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut worst = 0.0f64;
        for _ in 0..1_000_000 {
            let r: f64 = rng.gen_range(0.1..10.0);
            let th: f64 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            let z = Complex64::from_polar(r, th);
            let l = principal_log(z).unwrap();
            assert!(l.im > -std::f64::consts::PI && l.im <= std::f64::consts::PI);
            worst = worst.max((l.exp() - z).norm() / z.norm());
        }
        assert!(worst <= 1e-14, "worst relative error {worst:e}");
    }

    #[test]
    fn precision_mode_parsing() {
        assert_eq!("extended".parse::<PrecisionMode>().unwrap(), PrecisionMode::Extended);
        assert_eq!("machine-double".parse::<PrecisionMode>().unwrap(), PrecisionMode::MachineDouble);
        assert!("quad".parse::<PrecisionMode>().is_err());
    }

    #[test]
    fn config_validation() {
        assert!(NumericsConfig::default().validate().is_ok());
        let bad = NumericsConfig { newton_max_iter: 0, ..NumericsConfig::default() };
        assert!(bad.validate().is_err());
        let bad = NumericsConfig { quad_abs_tol: -1.0, ..NumericsConfig::default() };
        assert!(bad.validate().is_err());
    }
}
