//! The verification harness: inequality checks with fitted constants,
//! sharpness sweeps, the slice lower-bound construction and the
//! extremizer search.

mod battery;
mod checks;
mod extremizer;
mod lower_bound;
mod records;
mod sharpness;
mod suites;

pub use battery::{instance_rng, paraboloid_battery, spatial_battery, NamedSet};
pub use checks::{
    check_energy_bound_d3, check_energy_bound_d4, check_stein_tomas, check_transfer_bound,
    piecewise_regime_report, dyadic_decompose, exponent_bookkeeping, extension_ratio,
    DyadicDecomposition, ExponentBookkeeping, RegimeReport,
};
pub use extremizer::{extremizer_search, SearchResult, SearchTracePoint};
pub use lower_bound::{lower_bound_construction, LowerBoundReport};
pub use records::{BoundCheckRecord, InstanceMeta, RhsTerm};
pub use sharpness::{sharpness_sweep, SharpnessRow};
pub use suites::{run_verify_suite, VerifySummary, BOUND_NAMES};

use crate::energy::EnergyError;
use crate::field::FieldError;
use crate::incidence::IncidenceError;
use crate::paraboloid::ParaboloidError;
use crate::spectral::SpectralError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifierError {
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Energy(#[from] EnergyError),
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Paraboloid(#[from] ParaboloidError),
    #[error("no isotropic line exists in the base space for p = {0}")]
    NoIsotropicLine(u64),
    #[error("p = {0} gives interval length N < 2")]
    IntervalTooSmall(u64),
    #[error("unknown bound `{0}`")]
    UnknownBound(String),
    #[error("ambient dimension {0} is not supported here (need 3 or 4)")]
    UnsupportedDimension(usize),
}
