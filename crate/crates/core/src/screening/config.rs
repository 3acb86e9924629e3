use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::material::{DefectPopulation, DefectSpecies};
use crate::physics::{LocalFieldModel, PhysicsOptions, VelocityChoice};
use crate::units::per_cm3_to_per_m3;

/// Which dielectric tensor of a record feeds n_r.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DielectricSource {
    #[default]
    Total,
    Electronic,
}

/// Screening parameters, read from a TOML-style key/value file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScreenConfig {
    pub frequency_ghz: f64,
    pub n_def_per_cm3: f64,
    pub z_eff: f64,
    pub local_field_model: LocalFieldModel,
    pub velocity: VelocityChoice,
    /// Records with E_g^PBE at or below this are excluded.
    pub gap_threshold_ev: f64,
    pub exclude_magnetic: bool,
    /// |magnetisation| per formula unit above which a record counts as magnetic.
    pub magnetization_threshold_mu_b: f64,
    pub dielectric: DielectricSource,
}

impl Default for ScreenConfig {
    fn default() -> Self {
        ScreenConfig {
            frequency_ghz: 4.5,
            n_def_per_cm3: 1e18,
            z_eff: 1.0,
            local_field_model: LocalFieldModel::Onsager,
            velocity: VelocityChoice::Transverse,
            gap_threshold_ev: 0.0,
            exclude_magnetic: true,
            magnetization_threshold_mu_b: 1e-3,
            dielectric: DielectricSource::Total,
        }
    }
}

impl ScreenConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ScreenConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.frequency_ghz.is_finite() && self.frequency_ghz > 0.0) {
            return Err(Error::Config(format!(
                "frequency_ghz must be positive, got {}",
                self.frequency_ghz
            )));
        }
        if !(self.n_def_per_cm3.is_finite() && self.n_def_per_cm3 >= 0.0) {
            return Err(Error::Config(format!(
                "n_def_per_cm3 must be non-negative, got {}",
                self.n_def_per_cm3
            )));
        }
        if !self.z_eff.is_finite() {
            return Err(Error::Config("z_eff must be finite".into()));
        }
        if self.gap_threshold_ev.is_nan() || self.magnetization_threshold_mu_b.is_nan() {
            return Err(Error::Config("thresholds must not be NaN".into()));
        }
        if let VelocityChoice::Fitted(v) = self.velocity {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!(
                    "fitted velocity must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    pub fn physics(&self) -> PhysicsOptions {
        PhysicsOptions {
            local_field: self.local_field_model,
            velocity: self.velocity,
        }
    }

    /// The uniform defect population applied to every material.
    pub fn default_defects(&self) -> DefectPopulation {
        DefectPopulation::new(vec![DefectSpecies {
            z_eff: self.z_eff,
            n_def: per_cm3_to_per_m3(self.n_def_per_cm3),
        }])
    }
}

/// Per-material defect chemistry, keyed by material id.
///
/// ```toml
/// ["mp-1143"]
/// defects = [{ z_eff = 1, n_def_per_cm3 = 1e18 }, { z_eff = -3, n_def_per_cm3 = 3.3333e17 }]
/// ```
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides(BTreeMap<String, DefectPopulation>);

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OverrideEntry {
    defects: Vec<OverrideDefect>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OverrideDefect {
    z_eff: f64,
    n_def_per_cm3: f64,
}

impl Overrides {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: BTreeMap<String, OverrideEntry> =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let mut out = BTreeMap::new();
        for (id, entry) in raw {
            let species = entry
                .defects
                .into_iter()
                .map(|d| DefectSpecies::new(d.z_eff, per_cm3_to_per_m3(d.n_def_per_cm3)))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Config(format!("override `{id}`: {e}")))?;
            out.insert(id, DefectPopulation::new(species));
        }
        Ok(Overrides(out))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn insert(&mut self, id: impl Into<String>, defects: DefectPopulation) {
        self.0.insert(id.into(), defects);
    }

    pub fn get(&self, id: &str) -> Option<&DefectPopulation> {
        self.0.get(id)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Why a record was left out of the ranking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExclusionReason {
    NoGap,
    Magnetic,
    MissingElastic,
    MissingDielectric,
    InvalidData,
}

impl ExclusionReason {
    pub const ALL: [ExclusionReason; 5] = [
        ExclusionReason::NoGap,
        ExclusionReason::Magnetic,
        ExclusionReason::MissingElastic,
        ExclusionReason::MissingDielectric,
        ExclusionReason::InvalidData,
    ];
}

impl fmt::Display for ExclusionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
