//! On-disk database records: line-delimited JSON, one material per line.

use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// One database entry as exported. Every field is optional at parse time;
/// missing data becomes an exclusion during filtering.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RawRecord {
    pub material_id: Option<String>,
    pub formula: Option<String>,
    pub spacegroup_symbol: Option<String>,
    pub is_centrosymmetric: Option<bool>,
    pub band_gap_pbe_ev: Option<f64>,
    pub is_magnetic: Option<bool>,
    /// Total magnetisation per cell, μB.
    pub total_magnetization_mu_b: Option<f64>,
    pub density_g_per_cm3: Option<f64>,
    pub natoms: Option<u32>,
    pub volume_angstrom3: Option<f64>,
    pub bulk_modulus_vrh_gpa: Option<f64>,
    pub shear_modulus_vrh_gpa: Option<f64>,
    /// Ionic + electronic static dielectric tensor.
    pub dielectric_total: Option<[[f64; 3]; 3]>,
    /// Electronic (high-frequency) contribution only.
    pub dielectric_electronic: Option<[[f64; 3]; 3]>,
}

/// A line of input: the parsed record, or why it could not be parsed.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordInput {
    /// 1-based line number in the source file.
    pub line: usize,
    pub record: std::result::Result<RawRecord, MalformedRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MalformedRecord {
    /// `material_id`, when it could still be recovered from the line.
    pub material_id: Option<String>,
    pub message: String,
}

impl RecordInput {
    pub fn parse(line: usize, text: &str) -> Self {
        let record = serde_json::from_str::<RawRecord>(text).map_err(|e| MalformedRecord {
            material_id: serde_json::from_str::<serde_json::Value>(text)
                .ok()
                .and_then(|v| v.get("material_id")?.as_str().map(str::to_owned)),
            message: e.to_string(),
        });
        RecordInput { line, record }
    }

    /// Identifier used in output rows; falls back to `line:<n>`.
    pub fn display_id(&self) -> String {
        let id = match &self.record {
            Ok(r) => r.material_id.clone(),
            Err(m) => m.material_id.clone(),
        };
        id.unwrap_or_else(|| format!("line:{}", self.line))
    }
}

/// Reads every non-blank line. I/O failures abort; malformed JSON does not.
pub fn read_records<R: BufRead>(reader: R) -> Result<Vec<RecordInput>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(RecordInput::parse(i + 1, &line));
    }
    Ok(out)
}
