//! Numerical engine for colored Jones polynomials of twist knots `K_p` at the
//! root of unity `ξ_N = e^{2πi/(N+1/2)}`.

// Dense small matrices and tables read most clearly with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod asympt;
pub mod critical;
pub mod error;
pub mod fourier;
pub mod geometry;
pub mod jones;
pub mod numerics;
pub mod polylog;
pub mod potential;

pub use asympt::AsymptoticModel;
pub use critical::CriticalData;
pub use error::{Error, Result};
pub use fourier::FourierCoefficient;
pub use geometry::GluingSolution;
pub use jones::{JonesValue, KnotSpec};
pub use numerics::{ComplexValue, NumericsConfig, PrecisionMode, QuadResult};
pub use potential::{FourierIndex, PotentialPoint, RegionSpec};
