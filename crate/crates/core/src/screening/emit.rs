//! Table, scatter-data and exclusion-list writers.

use std::io::Write;

use super::pipeline::{RowValues, ScreeningRow};
use crate::format::sci;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableFormat {
    #[default]
    Csv,
    Text,
    Json,
}

impl std::str::FromStr for TableFormat {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "text" | "txt" => Ok(TableFormat::Text),
            "json" => Ok(TableFormat::Json),
            other => Err(crate::Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

pub const TABLE_COLUMNS: [&str; 7] = [
    "material",
    "space_group",
    "centrosymmetric",
    "omega_m_thz",
    "n_r",
    "a_c_m_s",
    "tan_delta",
];

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn yes_no(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "Y",
        Some(false) => "N",
        None => "",
    }
}

fn included(rows: &[ScreeningRow]) -> impl Iterator<Item = (&ScreeningRow, &RowValues)> {
    rows.iter().filter_map(|r| r.values().map(|v| (r, v)))
}

fn table_cells(row: &ScreeningRow, v: &RowValues) -> [String; 7] {
    [
        row.formula.clone().unwrap_or_else(|| row.id.clone()),
        row.space_group.clone().unwrap_or_default(),
        yes_no(row.centrosymmetric).to_string(),
        sci(v.omega_m_thz),
        sci(v.n_r),
        sci(v.a_c),
        sci(v.tan_delta),
    ]
}

/// Writes the ranked table of included rows (CSV or aligned text), or every
/// row as a JSON array.
pub fn emit_table<W: Write>(
    mut out: W,
    rows: &[ScreeningRow],
    format: TableFormat,
) -> std::io::Result<()> {
    match format {
        TableFormat::Csv => {
            writeln!(out, "{}", TABLE_COLUMNS.join(","))?;
            for (r, v) in included(rows) {
                let cells = table_cells(r, v);
                let cells: Vec<String> = cells.iter().map(|c| csv_field(c)).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
        }
        TableFormat::Text => {
            let body: Vec<[String; 7]> = included(rows).map(|(r, v)| table_cells(r, v)).collect();
            let mut widths = TABLE_COLUMNS.map(str::len);
            for cells in &body {
                for (w, c) in widths.iter_mut().zip(cells) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: &[&str]| {
                cells
                    .iter()
                    .zip(widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(out, "{}", line(&TABLE_COLUMNS))?;
            for cells in &body {
                let refs: Vec<&str> = cells.iter().map(String::as_str).collect();
                writeln!(out, "{}", line(&refs))?;
            }
        }
        TableFormat::Json => {
            serde_json::to_writer_pretty(&mut out, rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// Scatter data: (ω_m/2π, 𝒜_c) and (corrected E_g, 𝒜_c), included rows only.
pub fn emit_figure_data<W1: Write, W2: Write>(
    mut debye: W1,
    mut gap: W2,
    rows: &[ScreeningRow],
) -> std::io::Result<()> {
    writeln!(debye, "omega_m_thz,a_c_m_s")?;
    writeln!(gap, "e_g_corrected_ev,a_c_m_s")?;
    for (_, v) in included(rows) {
        writeln!(debye, "{},{}", sci(v.omega_m_thz), sci(v.a_c))?;
        writeln!(gap, "{},{}", sci(v.e_g_corrected), sci(v.a_c))?;
    }
    Ok(())
}

/// `id,line,formula,reason` for every excluded row.
pub fn emit_exclusions<W: Write>(mut out: W, rows: &[ScreeningRow]) -> std::io::Result<()> {
    writeln!(out, "id,line,formula,reason")?;
    for r in rows {
        if let Some(reason) = r.exclusion() {
            writeln!(
                out,
                "{},{},{},{reason}",
                csv_field(&r.id),
                r.line,
                csv_field(r.formula.as_deref().unwrap_or(""))
            )?;
        }
    }
    Ok(())
}
