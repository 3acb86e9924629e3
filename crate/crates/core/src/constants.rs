//! CODATA 2018 physical constants, SI units.

/// Planck constant (J·s), exact.
pub const H: f64 = 6.626_070_15e-34;
/// Reduced Planck constant h/2π (J·s).
pub const HBAR: f64 = H / (2.0 * std::f64::consts::PI);
/// Speed of light in vacuum (m/s).
pub const C: f64 = 299_792_458.0;
/// Elementary charge (C).
pub const E: f64 = 1.602_176_634e-19;
/// Vacuum permittivity (F/m).
pub const EPS0: f64 = 8.854_187_812_8e-12;
/// Boltzmann constant (J/K).
pub const KB: f64 = 1.380_649e-23;
/// Fine-structure constant.
pub const ALPHA: f64 = 7.297_352_569_3e-3;
/// Atomic mass constant (kg).
pub const AMU: f64 = 1.660_539_066_60e-27;

/// The constant set as a value, for callers that want to pass it around.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub c: f64,
    pub e: f64,
    pub eps0: f64,
    pub kb: f64,
    pub alpha: f64,
    pub amu: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        hbar: HBAR,
        c: C,
        e: E,
        eps0: EPS0,
        kb: KB,
        alpha: ALPHA,
        amu: AMU,
    };

    /// e²/(4π ε₀ ħ c), which must reproduce `alpha`.
    pub fn alpha_from_electromagnetic(&self) -> f64 {
        self.e * self.e / (4.0 * std::f64::consts::PI * self.eps0 * self.hbar * self.c)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fine_structure_is_self_consistent() {
        let k = PhysicalConstants::CODATA_2018;
        let rel = (k.alpha_from_electromagnetic() / k.alpha - 1.0).abs();
        assert!(rel < 1e-11, "relative mismatch {rel:e}");
    }
}
