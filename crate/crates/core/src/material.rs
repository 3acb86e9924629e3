//! Validated host-material and defect records.

use std::fmt;

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::composition::{average_atomic_mass, Composition};
use crate::error::{Error, Result};

/// Relative tolerance for ϱ ≈ N_s·M on ingestion.
pub const DENSITY_CONSISTENCY_TOLERANCE: f64 = 0.20;
/// Relative tolerance on the symmetry of the dielectric tensor.
pub const DIELECTRIC_SYMMETRY_TOLERANCE: f64 = 1e-6;

/// Static dielectric tensor (dimensionless, 3×3, real symmetric).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DielectricTensor(pub [[f64; 3]; 3]);

impl DielectricTensor {
    pub fn isotropic(eps: f64) -> Self {
        Self::diagonal([eps; 3])
    }

    pub fn diagonal(d: [f64; 3]) -> Self {
        DielectricTensor([[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]])
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    /// Largest relative asymmetry |ε_ij − ε_ji| / max|ε|.
    pub fn asymmetry(&self) -> f64 {
        let scale = self.0.iter().flatten().fold(0.0_f64, |m, x| m.max(x.abs()));
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in (i + 1)..3 {
                worst = worst.max((self.0[i][j] - self.0[j][i]).abs());
            }
        }
        worst / scale
    }

    /// Eigenvalues of the symmetric part, ascending.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let m = Matrix3::from_fn(|i, j| 0.5 * (self.0[i][j] + self.0[j][i]));
        let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        [ev[0], ev[1], ev[2]]
    }
}

/// Raw per-material inputs, SI units throughout.
#[derive(Debug, Clone, PartialEq)]
pub struct HostMaterial {
    pub id: String,
    pub composition: Composition,
    /// ϱ, kg/m³.
    pub mass_density: f64,
    /// N_s, atoms/m³.
    pub site_density: f64,
    /// K, Pa.
    pub bulk_modulus: f64,
    /// G, Pa.
    pub shear_modulus: f64,
    pub dielectric: DielectricTensor,
    /// PBE band gap, eV.
    pub band_gap_pbe: f64,
    pub space_group: String,
    pub centrosymmetric: bool,
    pub magnetic: bool,
}

/// One failed record-level invariant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Violation {
    NotPositive { field: &'static str, value: f64 },
    NegativeBandGap(f64),
    NonFiniteDielectric,
    AsymmetricDielectric(f64),
    DielectricBelowVacuum(f64),
    DensityMismatch { record: f64, from_composition: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPositive { field, value } => {
                write!(f, "{field} must be > 0 (got {value})")
            }
            Violation::NegativeBandGap(g) => write!(f, "band gap must be >= 0 (got {g} eV)"),
            Violation::NonFiniteDielectric => write!(f, "dielectric tensor has non-finite entries"),
            Violation::AsymmetricDielectric(a) => {
                write!(f, "dielectric tensor asymmetric (relative {a:e})")
            }
            Violation::DielectricBelowVacuum(ev) => {
                write!(f, "dielectric tensor eigenvalue {ev} < 1")
            }
            Violation::DensityMismatch {
                record,
                from_composition,
            } => write!(
                f,
                "mass density {record} kg/m3 inconsistent with N_s*M = {from_composition} kg/m3"
            ),
        }
    }
}

impl HostMaterial {
    /// N_s from atoms per cell and cell volume in m³.
    pub fn site_density_from_cell(natoms: u32, cell_volume_m3: f64) -> f64 {
        f64::from(natoms) / cell_volume_m3
    }

    /// Average atomic mass M in kg.
    pub fn mean_atomic_mass(&self) -> f64 {
        average_atomic_mass(&self.composition)
    }

    /// Every violated invariant, empty for a valid record.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (field, value) in [
            ("mass_density", self.mass_density),
            ("site_density", self.site_density),
            ("bulk_modulus", self.bulk_modulus),
            ("shear_modulus", self.shear_modulus),
        ] {
            if !(value.is_finite() && value > 0.0) {
                out.push(Violation::NotPositive { field, value });
            }
        }
        if !(self.band_gap_pbe.is_finite() && self.band_gap_pbe >= 0.0) {
            out.push(Violation::NegativeBandGap(self.band_gap_pbe));
        }
        if !self.dielectric.is_finite() {
            out.push(Violation::NonFiniteDielectric);
        } else {
            let asym = self.dielectric.asymmetry();
            if asym > DIELECTRIC_SYMMETRY_TOLERANCE {
                out.push(Violation::AsymmetricDielectric(asym));
            }
            let lowest = self.dielectric.eigenvalues()[0];
            if lowest < 1.0 {
                out.push(Violation::DielectricBelowVacuum(lowest));
            }
        }
        if self.mass_density.is_finite()
            && self.mass_density > 0.0
            && self.site_density.is_finite()
            && self.site_density > 0.0
        {
            let expected = self.site_density * self.mean_atomic_mass();
            if ((self.mass_density - expected) / expected).abs() > DENSITY_CONSISTENCY_TOLERANCE {
                out.push(Violation::DensityMismatch {
                    record: self.mass_density,
                    from_composition: expected,
                });
            }
        }
        out
    }

    /// Consumes the record, returning it only if [`validate`](Self::validate) is clean.
    pub fn validated(self) -> Result<Self> {
        let v = self.validate();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(Error::Invalid(v))
        }
    }
}

/// A charged defect species: effective charge (units of e) and number density (m⁻³).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DefectSpecies {
    pub z_eff: f64,
    pub n_def: f64,
}

impl DefectSpecies {
    pub fn new(z_eff: f64, n_def: f64) -> Result<Self> {
        if !z_eff.is_finite() {
            return Err(Error::Domain(format!("Z_eff must be finite, got {z_eff}")));
        }
        crate::error::non_negative("N_def", n_def)?;
        Ok(DefectSpecies { z_eff, n_def })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DefectPopulation(Vec<DefectSpecies>);

impl DefectPopulation {
    pub fn new(species: Vec<DefectSpecies>) -> Self {
        DefectPopulation(species)
    }

    pub fn single(z_eff: f64, n_def: f64) -> Result<Self> {
        Ok(DefectPopulation(vec![DefectSpecies::new(z_eff, n_def)?]))
    }

    pub fn species(&self) -> &[DefectSpecies] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Σ N_def·Z_eff², m⁻³.
    pub fn charge_weighted_density(&self) -> f64 {
        self.0.iter().map(|s| s.n_def * s.z_eff * s.z_eff).sum()
    }

    /// Σ N_def·Z_eff, m⁻³.
    pub fn net_charge_density(&self) -> f64 {
        self.0.iter().map(|s| s.n_def * s.z_eff).sum()
    }

    pub fn total_density(&self) -> f64 {
        self.0.iter().map(|s| s.n_def).sum()
    }

    /// Neutral to within 1e-9 of the charged-defect density.
    pub fn is_neutral(&self) -> bool {
        let scale: f64 = self.0.iter().map(|s| s.n_def * s.z_eff.abs()).sum();
        scale == 0.0 || self.net_charge_density().abs() <= 1e-9 * scale
    }
}

impl FromIterator<DefectSpecies> for DefectPopulation {
    fn from_iter<I: IntoIterator<Item = DefectSpecies>>(iter: I) -> Self {
        DefectPopulation(iter.into_iter().collect())
    }
}
