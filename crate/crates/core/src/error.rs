//! Error type shared by every module of the engine.

use crate::numerics::ComplexValue;
use thiserror::Error;

/// Failure modes of the numerical engine.
///
/// Every variant carries enough context to be serialized into a machine-readable
/// error record by a front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested operation.
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// An argument lies on a branch cut of a multivalued function.
    #[error("branch cut collision in {op}: {msg}")]
    Branch { op: &'static str, msg: String },

    /// Quadrature exhausted its budget; the partial estimate is attached.
    #[error("quadrature did not converge: estimate {estimate} with error {error:e}")]
    Quadrature { estimate: ComplexValue, error: f64 },

    /// The Jacobian of a Newton system became singular.
    #[error("singular Jacobian at iteration {iteration}")]
    SingularJacobian { iteration: usize },

    /// Newton iteration ran out of iterations; the last iterate is attached.
    #[error("Newton iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence {
        iterations: usize,
        residual: f64,
        last: [ComplexValue; 2],
    },

    /// Two independently computed quantities disagree.
    #[error("consistency check failed: {0}")]
    Consistency(String),

    /// Machine precision is insufficient; the caller should switch to extended mode.
    #[error("precision escalation required: {0}")]
    Precision(String),

    /// A result is not representable as a finite double.
    #[error("overflow: {0}")]
    Overflow(String),

    /// A least-squares fit is ill-posed.
    #[error("fitting error: {0}")]
    Fitting(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { op, msg: msg.into() }
    }

    pub(crate) fn branch(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Branch { op, msg: msg.into() }
    }

    /// Short stable identifier for the variant, suitable for error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::Branch { .. } => "branch",
            Error::Quadrature { .. } => "quadrature",
            Error::SingularJacobian { .. } => "singular_jacobian",
            Error::NonConvergence { .. } => "non_convergence",
            Error::Consistency(_) => "consistency",
            Error::Precision(_) => "precision",
            Error::Overflow(_) => "overflow",
            Error::Fitting(_) => "fitting",
        }
    }
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
