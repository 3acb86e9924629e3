//! Cauchy principal value 𝒫∫ ν(μ) dμ / (μ − z) by singularity subtraction.

use super::density::SpectralDensity;
use super::quadrature::{integrate_with_breaks, Tolerance};
use crate::error::{Error, Result};

/// z within this fraction of μ_max from the upper support edge is rejected.
pub const UPPER_EDGE_EXCLUSION: f64 = 1e-3;

/// Relative distance |s − √z|/√z below which the subtracted integrand is
/// replaced by its limit.
const TAYLOR_WINDOW: f64 = 1e-7;

/// 𝒫∫₀^{μ_max} ν(μ) dμ / (μ − z), in s²/rad² when ν is in s²/rad².
///
/// Interior z uses ∫(ν(μ) − ν(z))/(μ − z) dμ + ν(z)·ln((μ_max − z)/z); the
/// remainder is integrated in s = √μ. z outside the support gives the
/// ordinary integral.
pub fn pv_integral(density: &SpectralDensity, z: f64) -> Result<f64> {
    let mu_max = density.mu_max();
    if !z.is_finite() {
        return Err(Error::Domain(format!("z must be finite, got {z}")));
    }
    if z == 0.0 || (z - mu_max).abs() <= UPPER_EDGE_EXCLUSION * mu_max {
        return Err(Error::BoundarySingularity { z, mu_max });
    }
    let tol = Tolerance {
        abs: 1e-15 / mu_max,
        rel: 1e-13,
        max_intervals: 20_000,
    };
    let knots = density.knots();

    if z < 0.0 || z > mu_max {
        let est = integrate_with_breaks(|s| density.rho(s) / (s * s - z), &knots, tol)?;
        return Ok(est.value);
    }

    let a = z.sqrt();
    let nu_z = density.nu(z);
    let two_nu_z = 2.0 * nu_z;
    let near_limit = density.rho_derivative(a) - two_nu_z;
    let remainder = |s: f64| {
        if (s - a).abs() <= TAYLOR_WINDOW * a {
            near_limit / (s + a)
        } else {
            (density.rho(s) - two_nu_z * s) / (s * s - z)
        }
    };
    let mut breaks = knots;
    breaks.push(a);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let est = integrate_with_breaks(remainder, &breaks, tol)?;
    Ok(est.value + nu_z * ((mu_max - z) / z).ln())
}
