//! Phonon spectral densities per squared frequency, ν(μ) with μ = ω².

use std::io::BufRead;

use super::interp::{Interpolant, Interpolation};
use super::quadrature::{integrate_with_breaks, Tolerance};
use crate::error::{positive, Error, Result};

/// Tabulated density, stored as ρ(ω) on the frequency grid.
///
/// ν(μ) = ρ(√μ)/(2√μ) is derived on demand; interpolating ρ in ω keeps the
/// √μ (or 1/√μ) behaviour near μ = 0 exact instead of asking a cubic to fit it.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedDensity {
    rho: Interpolant,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpectralDensity {
    /// ν(μ) = 3√μ / (2ω_m³) on [0, ω_m²].
    AnalyticDebye {
        omega_m: f64,
    },
    Tabulated(TabulatedDensity),
}

impl SpectralDensity {
    pub fn debye(omega_m: f64) -> Result<Self> {
        positive("Debye frequency", omega_m)?;
        Ok(SpectralDensity::AnalyticDebye { omega_m })
    }

    /// Upper end of the frequency support.
    pub fn omega_max(&self) -> f64 {
        match self {
            SpectralDensity::AnalyticDebye { omega_m } => *omega_m,
            SpectralDensity::Tabulated(t) => t.rho.domain().1,
        }
    }

    /// μ_max = ω_max².
    pub fn mu_max(&self) -> f64 {
        self.omega_max().powi(2)
    }

    /// Density of states per unit angular frequency, ρ(ω).
    pub fn rho(&self, omega: f64) -> f64 {
        match self {
            SpectralDensity::AnalyticDebye { omega_m } => {
                crate::physics::debye_dos(omega, *omega_m)
            }
            SpectralDensity::Tabulated(t) => t.rho.eval(omega),
        }
    }

    pub(crate) fn rho_derivative(&self, omega: f64) -> f64 {
        match self {
            SpectralDensity::AnalyticDebye { omega_m } => {
                if (0.0..=*omega_m).contains(&omega) {
                    6.0 * omega / omega_m.powi(3)
                } else {
                    0.0
                }
            }
            SpectralDensity::Tabulated(t) => t.rho.derivative(omega),
        }
    }

    /// ν(μ); zero outside [0, μ_max].
    pub fn nu(&self, mu: f64) -> f64 {
        if !(0.0..=self.mu_max()).contains(&mu) {
            return 0.0;
        }
        match self {
            SpectralDensity::AnalyticDebye { omega_m } => 1.5 * mu.sqrt() / omega_m.powi(3),
            SpectralDensity::Tabulated(_) => {
                let s = mu.sqrt();
                if s == 0.0 {
                    return if self.rho(0.0) > 0.0 {
                        f64::INFINITY
                    } else {
                        0.0
                    };
                }
                self.rho(s) / (2.0 * s)
            }
        }
    }

    /// Frequency knots where the density is only piecewise smooth.
    pub(crate) fn knots(&self) -> Vec<f64> {
        match self {
            SpectralDensity::AnalyticDebye { omega_m } => vec![0.0, *omega_m],
            SpectralDensity::Tabulated(t) => t.rho.x().to_vec(),
        }
    }

    /// (μ, ν) pairs on the tabulation grid, μ = 0 excluded.
    pub fn grid(&self) -> Vec<(f64, f64)> {
        self.knots()
            .into_iter()
            .filter(|&w| w > 0.0)
            .map(|w| (w * w, self.nu(w * w)))
            .collect()
    }

    /// ∫ ν(μ) dμ over the support, by quadrature in ω (dμ ν = dω ρ).
    pub fn normalization(&self) -> Result<f64> {
        let est = integrate_with_breaks(|w| self.rho(w), &self.knots(), Tolerance::default())?;
        Ok(est.value)
    }
}

/// Builds a tabulated spectral density from ρ(ω) samples, renormalised to unit weight.
///
/// A grid that does not start at ω = 0 is extended with ρ(0) = 0.
pub fn nu_from_dos(
    omega: &[f64],
    rho: &[f64],
    interpolation: Interpolation,
) -> Result<SpectralDensity> {
    if omega.len() != rho.len() || omega.len() < 2 {
        return Err(Error::Domain(
            "DOS needs at least two (omega, rho) samples".into(),
        ));
    }
    if omega.iter().chain(rho).any(|v| !v.is_finite()) {
        return Err(Error::Domain("DOS contains non-finite values".into()));
    }
    if omega[0] < 0.0 || rho.iter().any(|&r| r < 0.0) {
        return Err(Error::Domain(
            "DOS frequencies and values must be non-negative".into(),
        ));
    }
    let mut w = omega.to_vec();
    let mut r = rho.to_vec();
    if w[0] > 0.0 {
        w.insert(0, 0.0);
        r.insert(0, 0.0);
    }
    // ν = ρ/(2ω) must stay integrable in μ: reject ρ ~ ω^p with p <= -1 at the low end
    let positive_samples: Vec<(f64, f64)> = w
        .iter()
        .zip(&r)
        .filter(|(x, y)| **x > 0.0 && **y > 0.0)
        .map(|(x, y)| (*x, *y))
        .take(2)
        .collect();
    if let [(w1, r1), (w2, r2)] = positive_samples[..] {
        let slope = (r2 / r1).ln() / (w2 / w1).ln();
        if slope <= -1.0 {
            return Err(Error::Domain(format!(
                "DOS diverges like omega^{slope:.2} at zero frequency; nu(mu) is not integrable"
            )));
        }
    }
    let interp = Interpolant::new(w, r, interpolation)?;
    let total = interp.integral();
    if total.is_nan() || total <= 0.0 {
        return Err(Error::Domain("DOS has zero total weight".into()));
    }
    let density = SpectralDensity::Tabulated(TabulatedDensity {
        rho: interp.scaled(1.0 / total),
    });
    let norm = density.normalization()?;
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Error::Domain(format!("DOS normalization failed: {norm}")));
    }
    Ok(density)
}

/// Reads a two-column CSV `omega_rad_per_s,rho_per_rad_per_s` (header required,
/// `#` comments allowed).
pub fn read_dos_csv<R: BufRead>(reader: R) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut omega = Vec::new();
    let mut rho = Vec::new();
    let mut header_seen = false;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            header_seen = true;
            if line.replace(' ', "") != "omega_rad_per_s,rho_per_rad_per_s" {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!(
                        "expected header `omega_rad_per_s,rho_per_rad_per_s`, got `{line}`"
                    ),
                });
            }
            continue;
        }
        let parse = |s: &str| {
            s.trim().parse::<f64>().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("not a number: `{s}`"),
            })
        };
        let (a, b) = line.split_once(',').ok_or_else(|| Error::Parse {
            line: i + 1,
            message: "expected two comma-separated columns".into(),
        })?;
        omega.push(parse(a)?);
        rho.push(parse(b)?);
    }
    Ok((omega, rho))
}
