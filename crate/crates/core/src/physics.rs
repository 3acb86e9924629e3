//! Closed-form loss chain: host properties → Debye frequency → characteristic
//! parameter 𝒜_c → absorption coefficient → loss tangent.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constants::{ALPHA, C, E, EPS0, HBAR, KB};
use crate::error::{non_negative, positive, Error, Result};
use crate::material::{DefectPopulation, DielectricTensor, HostMaterial};

/// N_a·|χ_j|² in the acoustic (z → 0) limit of the mass-defect expansion.
pub const ACOUSTIC_CHI2_TIMES_NA: f64 = 1.0;
/// Projection of the single-site defect displacement onto one Cartesian
/// component of the field polarisation. Turns the per-component limit above
/// into the 1/(3N_a) that multiplies the 3N_a-mode sum.
pub const ACOUSTIC_POLARIZATION_PROJECTION: f64 = 1.0 / 3.0;
/// Phonon modes per atom.
const MODES_PER_ATOM: f64 = 3.0;

/// Model for the ratio of the local field at the defect to the macroscopic field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalFieldModel {
    /// 3ε/(2ε+1).
    #[default]
    Onsager,
    /// (ε+2)/3.
    #[serde(alias = "lorentz", alias = "lorentz-lorenz")]
    LorentzLorenz,
    /// No local-field correction.
    Unity,
}

impl LocalFieldModel {
    pub fn factor(self, eps: f64) -> Result<f64> {
        local_field_factor(eps, self)
    }
}

impl fmt::Display for LocalFieldModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LocalFieldModel::Onsager => "onsager",
            LocalFieldModel::LorentzLorenz => "lorentz_lorenz",
            LocalFieldModel::Unity => "unity",
        })
    }
}

impl FromStr for LocalFieldModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "onsager" => Ok(LocalFieldModel::Onsager),
            "lorentz" | "lorentz_lorenz" | "lorentz-lorenz" | "lorentzlorenz" => {
                Ok(LocalFieldModel::LorentzLorenz)
            }
            "unity" | "none" => Ok(LocalFieldModel::Unity),
            other => Err(Error::Config(format!(
                "unknown local-field model `{other}`"
            ))),
        }
    }
}

/// Which sound velocity sets the Debye frequency.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VelocityChoice {
    #[default]
    Transverse,
    Longitudinal,
    /// A user-supplied fitted velocity in m/s.
    Fitted(f64),
}

impl FromStr for VelocityChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "transverse" | "t" => Ok(VelocityChoice::Transverse),
            "longitudinal" | "l" => Ok(VelocityChoice::Longitudinal),
            other => other
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite() && *v > 0.0)
                .map(VelocityChoice::Fitted)
                .ok_or_else(|| Error::Config(format!("unknown velocity choice `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PhysicsOptions {
    pub local_field: LocalFieldModel,
    pub velocity: VelocityChoice,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SoundVelocities {
    pub transverse: f64,
    pub longitudinal: f64,
}

/// Isotropic transverse and longitudinal sound velocities from K, G (Pa) and ϱ (kg/m³).
pub fn sound_velocities(bulk: f64, shear: f64, density: f64) -> Result<SoundVelocities> {
    positive("bulk modulus", bulk)?;
    positive("shear modulus", shear)?;
    positive("mass density", density)?;
    Ok(SoundVelocities {
        transverse: (shear / density).sqrt(),
        longitudinal: ((bulk + 4.0 * shear / 3.0) / density).sqrt(),
    })
}

/// Debye angular frequency ω_m = 2π(3N_s/4π)^{1/3}·v_s.
pub fn debye_frequency(site_density: f64, velocity: f64) -> Result<f64> {
    positive("site density", site_density)?;
    positive("sound velocity", velocity)?;
    Ok(2.0 * PI * (3.0 * site_density / (4.0 * PI)).cbrt() * velocity)
}

/// Normalised Debye density of states ρ(ω) = 3ω²/ω_m³ on [0, ω_m], zero above.
pub fn debye_dos(omega: f64, omega_m: f64) -> f64 {
    if (0.0..=omega_m).contains(&omega) {
        3.0 * omega * omega / (omega_m * omega_m * omega_m)
    } else {
        0.0
    }
}

/// n_r = √(Tr ε / 3).
pub fn refractive_index(tensor: &DielectricTensor) -> Result<f64> {
    let trace = tensor.trace();
    if !(trace.is_finite() && trace >= 3.0) {
        return Err(Error::Domain(format!(
            "dielectric trace {trace} is below the vacuum value 3"
        )));
    }
    Ok((trace / 3.0).sqrt())
}

/// 𝓔_eff/𝓔₀ for scalar permittivity `eps`.
pub fn local_field_factor(eps: f64, model: LocalFieldModel) -> Result<f64> {
    if !(eps.is_finite() && eps >= 1.0) {
        return Err(Error::Domain(format!("permittivity {eps} is below 1")));
    }
    Ok(match model {
        LocalFieldModel::Onsager => 3.0 * eps / (2.0 * eps + 1.0),
        LocalFieldModel::LorentzLorenz => (eps + 2.0) / 3.0,
        LocalFieldModel::Unity => 1.0,
    })
}

/// Characteristic parameter 𝒜_c in m·s, such that a(ω) = N·Z²·𝒜_c²·ω².
pub fn characteristic_parameter(
    n_r: f64,
    mass: f64,
    omega_m: f64,
    field_factor: f64,
) -> Result<f64> {
    positive("refractive index", n_r)?;
    positive("atomic mass", mass)?;
    positive("Debye frequency", omega_m)?;
    positive("local-field factor", field_factor)?;
    Ok(field_factor * (6.0 * PI * PI * ALPHA / n_r * HBAR / mass / omega_m.powi(3)).sqrt())
}

/// Absorption coefficient a(ω) = (Σ N·Z²)·𝒜_c²·ω², in 1/m.
pub fn absorption_coefficient(defects: &DefectPopulation, a_c: f64, omega: f64) -> Result<f64> {
    non_negative("angular frequency", omega)?;
    Ok(defects.charge_weighted_density() * a_c * a_c * omega * omega)
}

/// Host quantities entering the single-defect cross section.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossSectionHost {
    pub field_factor: f64,
    pub n_r: f64,
    /// Average atomic mass, kg.
    pub mass: f64,
    pub omega_m: f64,
}

/// Absorption cross section per defect (m²) with the Debye density of states.
///
/// The 3N_a modes and the acoustic |χ_j|² = 1/(3N_a) are kept as separate
/// factors, so the sum over modes collapses to ρ(ω).
pub fn cross_section(z_eff: f64, host: &CrossSectionHost, omega: f64) -> f64 {
    let chi2_times_na = ACOUSTIC_CHI2_TIMES_NA * ACOUSTIC_POLARIZATION_PROJECTION;
    let mode_weight = MODES_PER_ATOM * chi2_times_na * debye_dos(omega, host.omega_m);
    z_eff
        * z_eff
        * host.field_factor
        * host.field_factor
        * (4.0 * PI * PI * ALPHA / host.n_r)
        * (HBAR / (2.0 * host.mass))
        * mode_weight
}

/// tan δ = c·a / (n_r·ω).
pub fn loss_tangent(a: f64, n_r: f64, omega: f64) -> Result<f64> {
    positive("angular frequency", omega)?;
    positive("refractive index", n_r)?;
    Ok(C / (n_r * omega) * a)
}

/// tan δ evaluated directly from ϱ and v_s, bypassing 𝒜_c.
pub fn loss_tangent_direct(
    defects: &DefectPopulation,
    field_factor: f64,
    n_r: f64,
    density: f64,
    velocity: f64,
    omega: f64,
) -> Result<f64> {
    positive("local-field factor", field_factor)?;
    positive("refractive index", n_r)?;
    positive("mass density", density)?;
    positive("sound velocity", velocity)?;
    positive("angular frequency", omega)?;
    Ok(1.0 / (4.0 * PI * EPS0 * n_r * n_r)
        * field_factor
        * field_factor
        * defects.charge_weighted_density()
        * E
        * E
        / (density * velocity.powi(3))
        * omega)
}

/// I(z) = I₀·exp(−a·z).
pub fn attenuate(i0: f64, a: f64, z: f64) -> Result<f64> {
    non_negative("intensity", i0)?;
    non_negative("depth", z)?;
    Ok(i0 * (-a * z).exp())
}

/// T* = ħω/k_B in kelvin; loss is temperature independent well below it.
pub fn temperature_bound(omega: f64) -> Result<f64> {
    non_negative("angular frequency", omega)?;
    Ok(HBAR * omega / KB)
}

/// Computed host quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HostDerived {
    pub v_t: f64,
    pub v_l: f64,
    /// The velocity actually used for ω_m.
    pub v_s: f64,
    pub omega_m: f64,
    pub n_r: f64,
    /// Scalar permittivity n_r².
    pub eps: f64,
    pub field_factor: f64,
    pub a_c: f64,
    /// Average atomic mass, kg.
    pub mean_atomic_mass: f64,
    pub mass_density: f64,
}

impl HostDerived {
    pub fn compute(material: &HostMaterial, opts: &PhysicsOptions) -> Result<Self> {
        let violations = material.validate();
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        let v = sound_velocities(
            material.bulk_modulus,
            material.shear_modulus,
            material.mass_density,
        )?;
        let v_s = match opts.velocity {
            VelocityChoice::Transverse => v.transverse,
            VelocityChoice::Longitudinal => v.longitudinal,
            VelocityChoice::Fitted(x) => positive("fitted sound velocity", x)?,
        };
        let omega_m = debye_frequency(material.site_density, v_s)?;
        let n_r = refractive_index(&material.dielectric)?;
        let eps = n_r * n_r;
        let field_factor = local_field_factor(eps, opts.local_field)?;
        let mass = material.mean_atomic_mass();
        let a_c = characteristic_parameter(n_r, mass, omega_m, field_factor)?;
        Ok(HostDerived {
            v_t: v.transverse,
            v_l: v.longitudinal,
            v_s,
            omega_m,
            n_r,
            eps,
            field_factor,
            a_c,
            mean_atomic_mass: mass,
            mass_density: material.mass_density,
        })
    }

    pub fn cross_section_host(&self) -> CrossSectionHost {
        CrossSectionHost {
            field_factor: self.field_factor,
            n_r: self.n_r,
            mass: self.mean_atomic_mass,
            omega_m: self.omega_m,
        }
    }
}

/// Loss figures at one angular frequency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LossResult {
    pub omega: f64,
    /// Cross section of each species, in population order (m²).
    pub sigma: Vec<f64>,
    /// Absorption coefficient (1/m).
    pub a: f64,
    pub tan_delta: f64,
    /// ħω/k_B (K).
    pub t_star: f64,
}

/// Evaluates the full chain for a defect population at angular frequency `omega`.
pub fn evaluate(host: &HostDerived, defects: &DefectPopulation, omega: f64) -> Result<LossResult> {
    if !defects.is_neutral() {
        log::warn!(
            "defect population is not charge neutral (net {:e} e/m3)",
            defects.net_charge_density()
        );
    }
    let a = absorption_coefficient(defects, host.a_c, omega)?;
    let tan_delta = loss_tangent(a, host.n_r, omega)?;
    let xs = host.cross_section_host();
    Ok(LossResult {
        omega,
        sigma: defects
            .species()
            .iter()
            .map(|s| cross_section(s.z_eff, &xs, omega))
            .collect(),
        a,
        tan_delta,
        t_star: temperature_bound(omega)?,
    })
}
