//! High-throughput screening over a materials-database export.

pub mod config;
pub mod emit;
pub mod filters;
pub mod pipeline;
pub mod record;

pub use config::{DielectricSource, ExclusionReason, Overrides, ScreenConfig};
pub use emit::{emit_exclusions, emit_figure_data, emit_table, TableFormat};
pub use filters::{apply_filters, corrected_gap, host_from_record};
pub use pipeline::{
    screen, screen_reader, verify_row, RowOutcome, RowValues, ScreenSummary, ScreeningRow,
};
pub use record::{read_records, RawRecord, RecordInput};

/// Curated records for eighteen common substrate hosts.
pub const TABLE1_FIXTURE: &str = include_str!("../../data/table1_fixture.jsonl");

/// Ranked table regenerated from [`TABLE1_FIXTURE`] with default settings.
pub const TABLE1_GOLDEN_CSV: &str = include_str!("../../data/table1_golden.csv");

/// Table rows for the bundled fixture under the default configuration.
pub fn table1_rows() -> crate::Result<Vec<ScreeningRow>> {
    screen_reader(
        TABLE1_FIXTURE.as_bytes(),
        &ScreenConfig::default(),
        &Overrides::default(),
    )
}
