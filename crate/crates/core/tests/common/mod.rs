#![allow(dead_code)]

use defect_loss::screening::{RawRecord, TABLE1_FIXTURE};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Published reference row: formula, ω_m/2π (THz), n_r, 𝒜_c (m·s), tan δ.
pub struct Reference {
    pub formula: &'static str,
    pub omega_m_thz: f64,
    pub n_r: f64,
    pub a_c: f64,
    pub tan_delta: f64,
}

const fn r(
    formula: &'static str,
    omega_m_thz: f64,
    n_r: f64,
    a_c: f64,
    tan_delta: f64,
) -> Reference {
    Reference {
        formula,
        omega_m_thz,
        n_r,
        a_c,
        tan_delta,
    }
}

pub const TABLE1: [Reference; 18] = [
    r("C", 42.3, 2.41, 9.8e-27, 3.4e-10),
    r("BN", 35.8, 2.64, 1.2e-26, 4.6e-10),
    r("SiC", 21.8, 3.29, 1.8e-26, 8.6e-10),
    r("BP", 20.2, 3.05, 2.1e-26, 1.2e-9),
    r("BeO", 23.5, 2.71, 2.2e-26, 1.6e-9),
    r("MgO", 16.9, 3.28, 2.7e-26, 1.8e-9),
    r("Al2O3", 17.3, 3.12, 2.6e-26, 1.8e-9),
    r("AlN", 17.4, 2.95, 2.6e-26, 2.0e-9),
    r("Si3N4", 17.6, 2.86, 2.7e-26, 2.1e-9),
    r("BAs", 12.7, 3.15, 2.8e-26, 2.2e-9),
    r("GaN", 11.4, 3.30, 3.3e-26, 2.8e-9),
    r("Si", 11.8, 3.61, 3.7e-26, 3.2e-9),
    r("Ga2O3", 9.8, 3.34, 4.4e-26, 4.9e-9),
    r("LiF", 13.5, 2.95, 4.9e-26, 6.8e-9),
    r("ZnO", 7.5, 3.29, 6.4e-26, 1.1e-8),
    r("SiO2", 11.2, 2.18, 5.8e-26, 1.3e-8),
    r("NaCl", 5.6, 2.56, 1.3e-25, 5.3e-8),
    r("KBr", 3.1, 2.20, 2.3e-25, 2.0e-7),
];

pub fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        ((a - b) / b).abs()
    }
}

pub fn fixture_records() -> Vec<RawRecord> {
    TABLE1_FIXTURE
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).expect("fixture parses"))
        .collect()
}

pub fn fixture_record(formula: &str) -> RawRecord {
    fixture_records()
        .into_iter()
        .find(|r| r.formula.as_deref() == Some(formula))
        .unwrap_or_else(|| panic!("{formula} not in fixture"))
}

/// Line-delimited JSON of `n` records made by perturbing fixture rows.
/// Roughly one in twenty is magnetic, gapless, incomplete or corrupt.
pub fn synthetic_database(n: usize, seed: u64) -> String {
    let base = fixture_records();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::with_capacity(n * 520);
    for i in 0..n {
        let mut r = base[rng.gen_range(0..base.len())].clone();
        let jitter = |rng: &mut ChaCha8Rng, x: f64| x * rng.gen_range(0.9..1.1);
        r.material_id = Some(format!("syn-{i:06}"));
        r.bulk_modulus_vrh_gpa = r.bulk_modulus_vrh_gpa.map(|x| jitter(&mut rng, x));
        r.shear_modulus_vrh_gpa = r.shear_modulus_vrh_gpa.map(|x| jitter(&mut rng, x));
        r.band_gap_pbe_ev = r.band_gap_pbe_ev.map(|x| jitter(&mut rng, x));
        let s = rng.gen_range(0.97..1.03);
        r.dielectric_total = r.dielectric_total.map(|t| t.map(|row| row.map(|x| x * s)));
        let v = rng.gen_range(0.98..1.02);
        r.volume_angstrom3 = r.volume_angstrom3.map(|x| x * v);
        r.density_g_per_cm3 = r.density_g_per_cm3.map(|x| x / v);
        match rng.gen_range(0..100) {
            0 => r.is_magnetic = Some(true),
            1 => r.band_gap_pbe_ev = Some(0.0),
            2 => r.shear_modulus_vrh_gpa = None,
            3 => r.dielectric_total = None,
            4 => {
                out.push_str(&format!(
                    "{{\"material_id\": \"syn-{i:06}\", \"natoms\": -1}}\n"
                ));
                continue;
            }
            _ => {}
        }
        out.push_str(&serde_json::to_string(&r).expect("record serialises"));
        out.push('\n');
    }
    out
}
