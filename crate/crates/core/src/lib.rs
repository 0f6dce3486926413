//! Fourier extension operators on paraboloids over prime fields.
//!
//! The crate provides exact combinatorial counting (additive energy,
//! rectangle classification, point-plane and point-line incidences) together
//! with a complex-valued spectral layer (discrete Fourier transform, the
//! extension operator, Lebesgue norms) and a verification harness that
//! evaluates the relevant inequalities with fitted constants.

pub mod energy;
pub mod field;
pub mod incidence;
pub mod io;
pub mod paraboloid;
pub mod spectral;
pub mod verifier;

pub use field::{FPoint, PointSet, PrimeContext};
