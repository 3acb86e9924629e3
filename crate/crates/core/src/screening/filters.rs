//! Selection rules turning a raw record into a validated host (or an exclusion).

use super::config::{DielectricSource, ExclusionReason, ScreenConfig};
use super::record::RawRecord;
use crate::composition::parse_formula;
use crate::error::{non_negative, positive, Error, Result};
use crate::material::{DielectricTensor, HostMaterial};
use crate::units::{angstrom3_to_m3, g_per_cm3_to_kg_per_m3, gpa_to_pa};

/// Empirically corrected band gap from the PBE value: 1.355·E_g^PBE + 0.916 eV.
pub fn corrected_gap(e_g_pbe: f64) -> Result<f64> {
    non_negative("PBE band gap", e_g_pbe)?;
    Ok(1.355 * e_g_pbe + 0.916)
}

/// Magnetisation per formula unit, when the record has enough data to tell.
fn magnetization_per_formula_unit(r: &RawRecord) -> Option<f64> {
    let m = r.total_magnetization_mu_b?;
    let units = match (r.formula.as_deref().map(parse_formula), r.natoms) {
        (Some(Ok(c)), Some(n)) if n > 0 => f64::from(n) / f64::from(c.atoms_per_formula_unit()),
        _ => 1.0,
    };
    Some(m.abs() / units)
}

/// Accepts a record as a validated [`HostMaterial`] or names the first filter it fails.
pub fn apply_filters(
    r: &RawRecord,
    cfg: &ScreenConfig,
) -> std::result::Result<HostMaterial, ExclusionReason> {
    use ExclusionReason::*;

    if r.material_id.is_none() {
        return Err(InvalidData);
    }
    let gap = r
        .band_gap_pbe_ev
        .filter(|g| g.is_finite())
        .ok_or(InvalidData)?;
    if gap <= cfg.gap_threshold_ev {
        return Err(NoGap);
    }
    let flagged = r.is_magnetic.ok_or(InvalidData)?;
    if cfg.exclude_magnetic
        && (flagged
            || magnetization_per_formula_unit(r)
                .is_some_and(|m| m > cfg.magnetization_threshold_mu_b))
    {
        return Err(Magnetic);
    }
    if r.bulk_modulus_vrh_gpa.is_none() || r.shear_modulus_vrh_gpa.is_none() {
        return Err(MissingElastic);
    }
    let tensor = match cfg.dielectric {
        DielectricSource::Total => r.dielectric_total,
        DielectricSource::Electronic => r.dielectric_electronic,
    };
    if tensor.is_none() {
        return Err(MissingDielectric);
    }

    host_from_record(r, cfg.dielectric).map_err(|_| InvalidData)
}

/// Builds a validated host from a record without applying any screening
/// filter. Missing or non-physical fields are errors.
pub fn host_from_record(r: &RawRecord, dielectric: DielectricSource) -> Result<HostMaterial> {
    let missing = |field: &str| Error::Domain(format!("record is missing `{field}`"));
    let composition = parse_formula(r.formula.as_deref().ok_or_else(|| missing("formula"))?)?;
    let density = r
        .density_g_per_cm3
        .ok_or_else(|| missing("density_g_per_cm3"))?;
    let natoms = r.natoms.ok_or_else(|| missing("natoms"))?;
    if natoms == 0 {
        return Err(Error::Domain("natoms must be positive".into()));
    }
    let volume = positive(
        "volume_angstrom3",
        r.volume_angstrom3
            .ok_or_else(|| missing("volume_angstrom3"))?,
    )?;
    let k = r
        .bulk_modulus_vrh_gpa
        .ok_or_else(|| missing("bulk_modulus_vrh_gpa"))?;
    let g = r
        .shear_modulus_vrh_gpa
        .ok_or_else(|| missing("shear_modulus_vrh_gpa"))?;
    let tensor = match dielectric {
        DielectricSource::Total => r
            .dielectric_total
            .ok_or_else(|| missing("dielectric_total"))?,
        DielectricSource::Electronic => r
            .dielectric_electronic
            .ok_or_else(|| missing("dielectric_electronic"))?,
    };
    let host = HostMaterial {
        id: r.material_id.clone().unwrap_or_default(),
        composition,
        mass_density: g_per_cm3_to_kg_per_m3(density),
        site_density: HostMaterial::site_density_from_cell(natoms, angstrom3_to_m3(volume)),
        bulk_modulus: gpa_to_pa(k),
        shear_modulus: gpa_to_pa(g),
        dielectric: DielectricTensor(tensor),
        band_gap_pbe: r
            .band_gap_pbe_ev
            .ok_or_else(|| missing("band_gap_pbe_ev"))?,
        space_group: r.spacegroup_symbol.clone().unwrap_or_default(),
        centrosymmetric: r.is_centrosymmetric.unwrap_or(false),
        magnetic: r.is_magnetic.unwrap_or(false),
    };
    host.validated()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn mgo() -> RawRecord {
        RawRecord {
            material_id: Some("mgo".into()),
            formula: Some("MgO".into()),
            spacegroup_symbol: Some("Fm-3m".into()),
            is_centrosymmetric: Some(true),
            band_gap_pbe_ev: Some(4.45),
            is_magnetic: Some(false),
            total_magnetization_mu_b: Some(0.0),
            density_g_per_cm3: Some(3.4876),
            natoms: Some(2),
            volume_angstrom3: Some(19.19),
            bulk_modulus_vrh_gpa: Some(152.0),
            shear_modulus_vrh_gpa: Some(117.36),
            dielectric_total: Some([[10.78, 0.0, 0.0], [0.0, 10.78, 0.0], [0.0, 0.0, 10.78]]),
            dielectric_electronic: None,
        }
    }

    #[test]
    fn gap_correction() {
        assert_eq!(corrected_gap(0.0).unwrap(), 0.916);
        assert!((corrected_gap(1.0).unwrap() - 2.271).abs() < 1e-12);
        assert!((corrected_gap(0.61).unwrap() - 1.74255).abs() < 1e-12);
        assert!(corrected_gap(-0.1).is_err());
    }

    #[test]
    fn complete_record_accepted() {
        let h = apply_filters(&mgo(), &ScreenConfig::default()).unwrap();
        assert_eq!(h.id, "mgo");
        assert!(h.centrosymmetric);
    }

    #[test]
    fn each_filter_fires() {
        let cfg = ScreenConfig::default();
        let check = |f: &dyn Fn(&mut RawRecord), reason| {
            let mut r = mgo();
            f(&mut r);
            assert_eq!(apply_filters(&r, &cfg).unwrap_err(), reason);
        };
        check(&|r| r.is_magnetic = Some(true), ExclusionReason::Magnetic);
        check(
            &|r| r.total_magnetization_mu_b = Some(0.5),
            ExclusionReason::Magnetic,
        );
        check(&|r| r.band_gap_pbe_ev = Some(0.0), ExclusionReason::NoGap);
        check(&|r| r.band_gap_pbe_ev = None, ExclusionReason::InvalidData);
        check(
            &|r| r.shear_modulus_vrh_gpa = None,
            ExclusionReason::MissingElastic,
        );
        check(
            &|r| r.dielectric_total = None,
            ExclusionReason::MissingDielectric,
        );
        check(
            &|r| r.formula = Some("Qq".into()),
            ExclusionReason::InvalidData,
        );
        check(
            &|r| r.shear_modulus_vrh_gpa = Some(-3.0),
            ExclusionReason::InvalidData,
        );
        check(&|r| r.natoms = Some(0), ExclusionReason::InvalidData);
        check(
            &|r| r.density_g_per_cm3 = Some(9.0),
            ExclusionReason::InvalidData,
        );
        check(&|r| r.material_id = None, ExclusionReason::InvalidData);
    }

    #[test]
    fn small_magnetization_per_formula_unit_is_tolerated() {
        let mut r = mgo();
        // 1.5e-3 μB over a 2-atom cell of a 2-atom formula unit: 1.5e-3 per f.u.
        r.total_magnetization_mu_b = Some(1.5e-3);
        assert_eq!(
            apply_filters(&r, &ScreenConfig::default()).unwrap_err(),
            ExclusionReason::Magnetic
        );
        r.natoms = Some(4);
        r.volume_angstrom3 = Some(38.38);
        assert!(apply_filters(&r, &ScreenConfig::default()).is_ok());
    }

    #[test]
    fn disabled_filters_admit_more() {
        let mut r = mgo();
        r.is_magnetic = Some(true);
        let cfg = ScreenConfig {
            exclude_magnetic: false,
            ..ScreenConfig::default()
        };
        assert!(apply_filters(&r, &cfg).is_ok());
    }

    #[test]
    fn electronic_dielectric_source() {
        let cfg = ScreenConfig {
            dielectric: DielectricSource::Electronic,
            ..ScreenConfig::default()
        };
        assert_eq!(
            apply_filters(&mgo(), &cfg).unwrap_err(),
            ExclusionReason::MissingDielectric
        );
        let mut r = mgo();
        r.dielectric_electronic = Some([[3.0, 0.0, 0.0], [0.0, 3.0, 0.0], [0.0, 0.0, 3.0]]);
        assert_eq!(apply_filters(&r, &cfg).unwrap().dielectric.trace(), 9.0);
    }
}
