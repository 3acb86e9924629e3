use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::io::BufRead;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{ExclusionReason, Overrides, ScreenConfig};
use super::filters::{apply_filters, corrected_gap};
use super::record::{read_records, RecordInput};
use crate::constants::AMU;
use crate::error::Result;
use crate::material::DefectPopulation;
use crate::physics::{
    absorption_coefficient, characteristic_parameter, local_field_factor, loss_tangent,
    HostDerived, LocalFieldModel,
};
use crate::units::{angular_to_thz, ghz_to_angular, thz_to_angular};

/// Where ϱ came from.
pub const DENSITY_SOURCE_RECORD: &str = "record";

/// Computed values for an included material.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowValues {
    pub omega_m_thz: f64,
    pub n_r: f64,
    /// 𝒜_c, m·s.
    pub a_c: f64,
    pub tan_delta: f64,
    pub e_g_corrected: f64,
    pub mean_atomic_mass_amu: f64,
    /// Σ N_def·Z_eff² used for tan δ, m⁻³.
    pub charge_weighted_density: f64,
    pub frequency_ghz: f64,
    pub local_field_model: LocalFieldModel,
    pub density_source: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RowOutcome {
    Included(RowValues),
    Excluded { reason: ExclusionReason },
}

/// One output record per input record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScreeningRow {
    pub id: String,
    /// 1-based source line.
    pub line: usize,
    pub formula: Option<String>,
    pub space_group: Option<String>,
    pub centrosymmetric: Option<bool>,
    #[serde(flatten)]
    pub outcome: RowOutcome,
}

impl ScreeningRow {
    pub fn values(&self) -> Option<&RowValues> {
        match &self.outcome {
            RowOutcome::Included(v) => Some(v),
            RowOutcome::Excluded { .. } => None,
        }
    }

    pub fn exclusion(&self) -> Option<ExclusionReason> {
        match self.outcome {
            RowOutcome::Included(_) => None,
            RowOutcome::Excluded { reason } => Some(reason),
        }
    }
}

fn process(input: &RecordInput, cfg: &ScreenConfig, overrides: &Overrides) -> ScreeningRow {
    let id = input.display_id();
    let excluded = |reason, rec: Option<&super::record::RawRecord>| ScreeningRow {
        id: id.clone(),
        line: input.line,
        formula: rec.and_then(|r| r.formula.clone()),
        space_group: rec.and_then(|r| r.spacegroup_symbol.clone()),
        centrosymmetric: rec.and_then(|r| r.is_centrosymmetric),
        outcome: RowOutcome::Excluded { reason },
    };
    let record = match &input.record {
        Ok(r) => r,
        Err(_) => return excluded(ExclusionReason::InvalidData, None),
    };
    let host = match apply_filters(record, cfg) {
        Ok(h) => h,
        Err(reason) => return excluded(reason, Some(record)),
    };
    let defaults = cfg.default_defects();
    let defects = overrides.get(&host.id).unwrap_or(&defaults);
    match included_values(&host, defects, cfg) {
        Ok(values) => ScreeningRow {
            id: id.clone(),
            line: input.line,
            formula: record.formula.clone(),
            space_group: record.spacegroup_symbol.clone(),
            centrosymmetric: record.is_centrosymmetric,
            outcome: RowOutcome::Included(values),
        },
        Err(e) => {
            log::debug!("{id}: {e}");
            excluded(ExclusionReason::InvalidData, Some(record))
        }
    }
}

fn included_values(
    host: &crate::material::HostMaterial,
    defects: &DefectPopulation,
    cfg: &ScreenConfig,
) -> Result<RowValues> {
    let derived = HostDerived::compute(host, &cfg.physics())?;
    let omega = ghz_to_angular(cfg.frequency_ghz);
    let a = absorption_coefficient(defects, derived.a_c, omega)?;
    Ok(RowValues {
        omega_m_thz: angular_to_thz(derived.omega_m),
        n_r: derived.n_r,
        a_c: derived.a_c,
        tan_delta: loss_tangent(a, derived.n_r, omega)?,
        e_g_corrected: corrected_gap(host.band_gap_pbe)?,
        mean_atomic_mass_amu: host.composition.mean_atomic_mass_amu(),
        charge_weighted_density: defects.charge_weighted_density(),
        frequency_ghz: cfg.frequency_ghz,
        local_field_model: cfg.local_field_model,
        density_source: DENSITY_SOURCE_RECORD.to_string(),
    })
}

fn row_order(a: &ScreeningRow, b: &ScreeningRow) -> Ordering {
    match (a.values(), b.values()) {
        (Some(x), Some(y)) => x
            .a_c
            .total_cmp(&y.a_c)
            .then_with(|| a.id.cmp(&b.id))
            .then(a.line.cmp(&b.line)),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => a.id.cmp(&b.id).then(a.line.cmp(&b.line)),
    }
}

/// Screens already-parsed records. Included rows come first, ascending in 𝒜_c
/// (ties by id); excluded rows follow, sorted by id.
pub fn screen(
    inputs: &[RecordInput],
    cfg: &ScreenConfig,
    overrides: &Overrides,
) -> Result<Vec<ScreeningRow>> {
    cfg.validate()?;
    let mut rows: Vec<ScreeningRow> = inputs
        .par_iter()
        .map(|r| process(r, cfg, overrides))
        .collect();
    rows.par_sort_by(row_order);
    Ok(rows)
}

/// Reads line-delimited JSON and screens it.
pub fn screen_reader<R: BufRead>(
    reader: R,
    cfg: &ScreenConfig,
    overrides: &Overrides,
) -> Result<Vec<ScreeningRow>> {
    let inputs = read_records(reader)?;
    screen(&inputs, cfg, overrides)
}

/// Recomputes 𝒜_c and tan δ from a row's own ω_m, n_r and M and compares
/// them with the stored values at relative tolerance `tol`.
pub fn verify_row(row: &ScreeningRow, tol: f64) -> std::result::Result<(), String> {
    let Some(v) = row.values() else {
        return Ok(());
    };
    let close = |name: &str, stored: f64, recomputed: f64| {
        let scale = stored.abs().max(recomputed.abs());
        if scale == 0.0 || ((stored - recomputed) / scale).abs() <= tol {
            Ok(())
        } else {
            Err(format!(
                "{}: {name} stored {stored:e}, recomputed {recomputed:e}",
                row.id
            ))
        }
    };
    let err = |e: crate::Error| format!("{}: {e}", row.id);
    let field = local_field_factor(v.n_r * v.n_r, v.local_field_model).map_err(err)?;
    let a_c = characteristic_parameter(
        v.n_r,
        v.mean_atomic_mass_amu * AMU,
        thz_to_angular(v.omega_m_thz),
        field,
    )
    .map_err(err)?;
    close("a_c", v.a_c, a_c)?;
    let omega = ghz_to_angular(v.frequency_ghz);
    let a = v.charge_weighted_density * a_c * a_c * omega * omega;
    let tan = loss_tangent(a, v.n_r, omega).map_err(err)?;
    close("tan_delta", v.tan_delta, tan)
}

/// Inclusion/exclusion counts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ScreenSummary {
    pub total: usize,
    pub included: usize,
    pub excluded: BTreeMap<ExclusionReason, usize>,
}

impl ScreenSummary {
    pub fn of(rows: &[ScreeningRow]) -> Self {
        let mut s = ScreenSummary {
            total: rows.len(),
            ..Default::default()
        };
        for r in rows {
            match r.exclusion() {
                None => s.included += 1,
                Some(reason) => *s.excluded.entry(reason).or_default() += 1,
            }
        }
        s
    }
}

impl fmt::Display for ScreenSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "records: {}", self.total)?;
        writeln!(f, "included: {}", self.included)?;
        for reason in ExclusionReason::ALL {
            writeln!(
                f,
                "excluded {reason}: {}",
                self.excluded.get(&reason).copied().unwrap_or(0)
            )?;
        }
        Ok(())
    }
}
