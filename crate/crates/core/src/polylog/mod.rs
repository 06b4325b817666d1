//! Special functions: the dilogarithm, the Lobachevsky function, the quantum
//! dilogarithm `φ_N` and q-Pochhammer/bracket conventions.

pub mod li2;
pub mod lobachevsky;
pub mod pochhammer;
pub mod qdilog;

pub use li2::{li2, li2_unchecked, PI2_6};
pub use lobachevsky::{clausen2, lobachevsky, lobachevsky_fourier, CATALAN, V8};
pub use pochhammer::{q_pochhammer, q_pochhammer_via_phi, BracketConvention};
pub use qdilog::{phi_n, phi_n_asymptotic, phi_n_at_spacing, phi_n_deriv, phi_n_reflection_rhs, PhiRule, RootOfUnity};
