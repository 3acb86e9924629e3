//! Mass-defect spectral machinery: densities per squared frequency, the
//! principal-value integral, and the expansion coefficients built on them.

pub mod chi;
pub mod density;
pub mod interp;
pub mod pv;
pub mod quadrature;

pub use chi::{
    acoustic_limit_check, chi2_times_na, chi_squared, sweep, sweep_grid, write_sweep_csv,
    AcousticLimit, ChiPoint, MassDefectParams,
};
pub use density::{nu_from_dos, read_dos_csv, SpectralDensity};
pub use interp::Interpolation;
pub use pv::pv_integral;
