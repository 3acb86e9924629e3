//! Microwave dielectric loss from charged point defects that absorb photons by
//! emitting acoustic phonons.
//!
//! The crate is organised bottom-up:
//!
//! - [`constants`], [`units`], [`composition`], [`material`]: physical
//!   constants, unit conversions, formula parsing and validated records.
//! - [`physics`]: the closed-form chain from elastic and dielectric data to the
//!   characteristic parameter 𝒜_c, absorption coefficient and loss tangent.
//! - [`spectral`]: mass-defect expansion coefficients, including the Cauchy
//!   principal-value integral over a phonon density of states.
//! - [`screening`]: ingest a materials-database export, filter, rank and emit
//!   tables and scatter data.

pub mod composition;
pub mod constants;
mod error;
pub mod format;
pub mod material;
pub mod physics;
pub mod screening;
pub mod spectral;
pub mod units;

pub use composition::{average_atomic_mass, parse_formula, Composition};
pub use constants::PhysicalConstants;
pub use error::{Error, Result};
pub use material::{DefectPopulation, DefectSpecies, DielectricTensor, HostMaterial, Violation};
pub use physics::{
    evaluate, HostDerived, LocalFieldModel, LossResult, PhysicsOptions, VelocityChoice,
};
pub use screening::{ExclusionReason, ScreenConfig, ScreeningRow};
pub use spectral::{MassDefectParams, SpectralDensity};
