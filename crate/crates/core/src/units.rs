//! Conversions between database-native units and SI.
//!
//! Everything inside the crate is SI; these helpers are the only place where
//! GPa, g/cm³, Å³, cm⁻³ and GHz appear.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub fn gpa_to_pa(gpa: f64) -> f64 {
    gpa * 1e9
}

pub fn pa_to_gpa(pa: f64) -> f64 {
    pa * 1e-9
}

pub fn g_per_cm3_to_kg_per_m3(x: f64) -> f64 {
    x * 1e3
}

pub fn angstrom3_to_m3(x: f64) -> f64 {
    x * 1e-30
}

pub fn per_cm3_to_per_m3(x: f64) -> f64 {
    x * 1e6
}

pub fn per_m3_to_per_cm3(x: f64) -> f64 {
    x * 1e-6
}

/// Ordinary frequency in GHz to angular frequency in rad/s.
pub fn ghz_to_angular(ghz: f64) -> f64 {
    2.0 * PI * ghz * 1e9
}

pub fn angular_to_ghz(omega: f64) -> f64 {
    omega / (2.0 * PI * 1e9)
}

/// Angular frequency in rad/s to ordinary frequency in THz.
pub fn angular_to_thz(omega: f64) -> f64 {
    omega / (2.0 * PI * 1e12)
}

pub fn thz_to_angular(thz: f64) -> f64 {
    2.0 * PI * thz * 1e12
}

/// Parses a number density with a mandatory unit suffix, `1e18/cm3` or
/// `1e24/m3`, and returns it in m⁻³.
pub fn parse_concentration(text: &str) -> Result<f64> {
    let text = text.trim();
    let (number, scale) = if let Some(n) = text.strip_suffix("/cm3") {
        (n, 1e6)
    } else if let Some(n) = text.strip_suffix("/m3") {
        (n, 1.0)
    } else {
        return Err(Error::Domain(format!(
            "concentration `{text}` needs a unit suffix (/cm3 or /m3)"
        )));
    };
    let value: f64 = number
        .trim()
        .parse()
        .map_err(|_| Error::Domain(format!("cannot parse concentration `{text}`")))?;
    if !value.is_finite() || value < 0.0 {
        return Err(Error::Domain(format!(
            "concentration must be non-negative, got `{text}`"
        )));
    }
    Ok(value * scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn concentration_suffixes() {
        assert_eq!(parse_concentration("1e18/cm3").unwrap(), 1e24);
        assert_eq!(parse_concentration("2.5e24/m3").unwrap(), 2.5e24);
        assert!(parse_concentration("1e18").is_err());
        assert!(parse_concentration("-1/cm3").is_err());
        assert!(parse_concentration("abc/m3").is_err());
    }

    #[test]
    fn frequency_round_trip() {
        let w = ghz_to_angular(4.5);
        assert!((angular_to_ghz(w) - 4.5).abs() < 1e-12);
        assert!((angular_to_thz(thz_to_angular(17.3)) - 17.3).abs() < 1e-12);
        assert!((pa_to_gpa(gpa_to_pa(97.8)) - 97.8).abs() < 1e-12);
    }
}
