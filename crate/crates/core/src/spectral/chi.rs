//! Mass-defect expansion coefficients |χ_j|² and their acoustic limit.

use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::density::SpectralDensity;
use super::pv::pv_integral;
use crate::error::{Error, Result};

/// Mass-defect parameters for one mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassDefectParams {
    /// ε = (M − M′)/M.
    pub eps_mass: f64,
    /// N_a, atoms in the model crystal.
    pub n_atoms: f64,
    /// z = ω_j², rad²/s².
    pub z: f64,
}

impl MassDefectParams {
    pub fn new(eps_mass: f64, n_atoms: f64, z: f64) -> Result<Self> {
        if !(eps_mass.is_finite() && eps_mass < 1.0) {
            return Err(Error::Domain(format!(
                "mass parameter must be < 1 (defect mass > 0), got {eps_mass}"
            )));
        }
        if !(n_atoms.is_finite() && n_atoms >= 1.0) {
            return Err(Error::Domain(format!("N_a must be >= 1, got {n_atoms}")));
        }
        if !(z.is_finite() && z >= 0.0) {
            return Err(Error::Domain(format!("z must be >= 0, got {z}")));
        }
        Ok(MassDefectParams {
            eps_mass,
            n_atoms,
            z,
        })
    }
}

/// One point of a z sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiPoint {
    pub z: f64,
    pub chi2_times_na: f64,
    pub pv_value: f64,
    /// 1 + ε·z·𝒫∫…; a sign change marks a resonance.
    pub bracket: f64,
}

/// N_a·|χ|² at squared frequency `z`.
pub fn chi2_times_na(eps_mass: f64, z: f64, density: &SpectralDensity) -> Result<ChiPoint> {
    MassDefectParams::new(eps_mass, 1.0, z)?;
    if z > density.mu_max() {
        return Err(Error::Domain(format!(
            "z = {z} outside the support [0, {}]",
            density.mu_max()
        )));
    }
    let pv_value = pv_integral(density, z)?;
    let nu = density.nu(z);
    let bracket = 1.0 + eps_mass * z * pv_value;
    let resonant = PI * eps_mass * z * nu;
    Ok(ChiPoint {
        z,
        chi2_times_na: 1.0 / (resonant * resonant + bracket * bracket),
        pv_value,
        bracket,
    })
}

/// |χ_j|² for a monatomic cubic crystal with a single mass defect.
pub fn chi_squared(params: &MassDefectParams, density: &SpectralDensity) -> Result<f64> {
    let p = chi2_times_na(params.eps_mass, params.z, density)?;
    Ok(p.chi2_times_na / params.n_atoms)
}

/// Evaluates many z in parallel; output order follows `zs`.
pub fn sweep(density: &SpectralDensity, eps_mass: f64, zs: &[f64]) -> Result<Vec<ChiPoint>> {
    zs.par_iter()
        .map(|&z| chi2_times_na(eps_mass, z, density))
        .collect()
}

/// `count` z values evenly spaced over [lo, hi]·μ_max.
pub fn sweep_grid(density: &SpectralDensity, lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let mu_max = density.mu_max();
    match count {
        0 => Vec::new(),
        1 => vec![lo * mu_max],
        n => (0..n)
            .map(|i| (lo + (hi - lo) * i as f64 / (n - 1) as f64) * mu_max)
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcousticLimit {
    /// Extrapolated N_a·|χ|² at z → 0.
    pub limit: f64,
    pub error: f64,
    /// (z, N_a·|χ|²) samples used.
    pub samples: Vec<(f64, f64)>,
}

/// Convergence threshold for the extrapolated limit.
const LIMIT_CONVERGENCE: f64 = 1e-3;

/// Richardson-extrapolates N_a·|χ_j|² over z = μ_max·10⁻ᵏ, k = 4..8.
pub fn acoustic_limit_check(
    density: &SpectralDensity,
    eps_mass: f64,
    n_atoms: f64,
) -> Result<AcousticLimit> {
    let mu_max = density.mu_max();
    let mut samples = Vec::with_capacity(5);
    for k in 4..=8 {
        let z = mu_max * 10f64.powi(-k);
        let params = MassDefectParams::new(eps_mass, n_atoms, z)?;
        samples.push((z, chi_squared(&params, density)? * n_atoms));
    }
    // leading correction is linear in z; step ratio 10
    let extrapolated: Vec<f64> = samples
        .windows(2)
        .map(|w| (10.0 * w[1].1 - w[0].1) / 9.0)
        .collect();
    let limit = *extrapolated.last().expect("four extrapolants");
    let error = (limit - extrapolated[extrapolated.len() - 2]).abs();
    if !limit.is_finite() || !error.is_finite() || error > LIMIT_CONVERGENCE * limit.abs().max(1.0)
    {
        return Err(Error::NotConverged(format!(
            "extrapolants {extrapolated:?} do not settle"
        )));
    }
    Ok(AcousticLimit {
        limit,
        error,
        samples,
    })
}

/// Writes `z,chi2_times_Na,pv_value` rows, then an optional trailer comment.
pub fn write_sweep_csv<W: Write>(
    mut out: W,
    points: &[ChiPoint],
    limit: Option<&AcousticLimit>,
) -> std::io::Result<()> {
    writeln!(out, "z,chi2_times_Na,pv_value")?;
    for p in points {
        writeln!(
            out,
            "{},{},{}",
            crate::format::sci(p.z),
            crate::format::sci(p.chi2_times_na),
            crate::format::sci(p.pv_value)
        )?;
    }
    if let Some(l) = limit {
        writeln!(
            out,
            "# acoustic_limit_chi2_times_Na={} error={}",
            crate::format::sci(l.limit),
            crate::format::sci(l.error)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_mass_change_is_exactly_one() {
        let d = SpectralDensity::debye(1.0).unwrap();
        for z in [1e-6, 0.1, 0.5, 0.9] {
            assert_eq!(chi2_times_na(0.0, z, &d).unwrap().chi2_times_na, 1.0);
        }
        let p = MassDefectParams::new(0.0, 8.0, 0.3).unwrap();
        assert_eq!(chi_squared(&p, &d).unwrap(), 0.125);
    }

    #[test]
    fn small_z_tends_to_one() {
        let d = SpectralDensity::debye(1.0).unwrap();
        let v = chi2_times_na(0.5, 1e-6, &d).unwrap().chi2_times_na;
        assert!((v - 1.0).abs() < 1e-4);
    }

    #[test]
    fn params_validated() {
        assert!(MassDefectParams::new(1.0, 1.0, 0.1).is_err());
        assert!(MassDefectParams::new(0.5, 0.5, 0.1).is_err());
        assert!(MassDefectParams::new(0.5, 1.0, -0.1).is_err());
        let d = SpectralDensity::debye(1.0).unwrap();
        assert!(chi2_times_na(0.5, 1.5, &d).is_err());
    }

    #[test]
    fn limit_for_debye() {
        let d = SpectralDensity::debye(2.0e13).unwrap();
        for eps in [-1.0, 0.1, 0.5, 0.9] {
            let l = acoustic_limit_check(&d, eps, 1.0).unwrap();
            assert!((l.limit - 1.0).abs() < 1e-4, "eps={eps}: {l:?}");
        }
        assert_eq!(acoustic_limit_check(&d, 0.0, 5.0).unwrap().limit, 1.0);
    }

    #[test]
    fn sweep_preserves_order() {
        let d = SpectralDensity::debye(1.0).unwrap();
        let zs = sweep_grid(&d, 0.01, 0.99, 50);
        let pts = sweep(&d, 0.3, &zs).unwrap();
        assert!(pts.iter().zip(&zs).all(|(p, z)| p.z == *z));
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &pts[..2], None).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("z,chi2_times_Na,pv_value\n1.00000e-02,"));
    }
}
