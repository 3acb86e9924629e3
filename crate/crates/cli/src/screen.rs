use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use defect_loss::screening::{
    emit_exclusions, emit_figure_data, emit_table, read_records, screen, verify_row, Overrides,
    ScreenSummary, TableFormat, TABLE1_FIXTURE,
};
use defect_loss::ScreeningRow;

use crate::output::{compare, create, io_failure, json_failure, open, read_json, Context};
use crate::{CliResult, Failure, Format};

const VERIFY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Line-delimited JSON database export.
    #[arg(required_unless_present = "verify")]
    database: Option<PathBuf>,
    /// Per-material defect populations (TOML).
    #[arg(long)]
    overrides: Option<PathBuf>,
    /// Check a previous `--format json` table; with a database, also rescreen and compare.
    #[arg(long)]
    verify: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct TableArgs {
    /// Records to tabulate instead of the bundled fixture.
    #[arg(long)]
    fixture: Option<PathBuf>,
}

fn extension(format: TableFormat) -> &'static str {
    match format {
        TableFormat::Csv => "csv",
        TableFormat::Text => "txt",
        TableFormat::Json => "json",
    }
}

fn screen_file(
    ctx: &Context,
    database: &Path,
    overrides: Option<&Path>,
) -> CliResult<Vec<ScreeningRow>> {
    let cfg = ctx.screen_config()?;
    let overrides = match overrides {
        Some(p) => Overrides::load(p)?,
        None => Overrides::default(),
    };
    let inputs = read_records(open(database)?)?;
    Ok(screen(&inputs, &cfg, &overrides)?)
}

fn write_file(path: &Path, f: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> CliResult {
    let mut w = BufWriter::new(create(path)?);
    f(&mut w).and_then(|_| w.flush()).map_err(io_failure)
}

fn verify(
    ctx: &Context,
    stored_path: &Path,
    database: Option<&Path>,
    overrides: Option<&Path>,
) -> CliResult {
    let stored: Vec<ScreeningRow> = read_json(stored_path)?;
    for row in &stored {
        verify_row(row, VERIFY_TOLERANCE).map_err(Failure::Input)?;
    }
    if let Some(db) = database {
        let fresh = screen_file(ctx, db, overrides)?;
        let lhs = serde_json::to_value(&stored).map_err(json_failure)?;
        let rhs = serde_json::to_value(&fresh).map_err(json_failure)?;
        compare(&lhs, &rhs, VERIFY_TOLERANCE, "$").map_err(Failure::Input)?;
    }
    println!(
        "verified {} rows in {}",
        stored.len(),
        stored_path.display()
    );
    Ok(())
}

pub fn run(ctx: &Context, a: Args) -> CliResult {
    if let Some(stored) = &a.verify {
        return verify(ctx, stored, a.database.as_deref(), a.overrides.as_deref());
    }
    let database = a.database.as_deref().expect("clap enforces a database");
    let rows = screen_file(ctx, database, a.overrides.as_deref())?;

    let dir = ctx.output.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir)
        .map_err(|e| Failure::Input(format!("cannot create {}: {e}", dir.display())))?;
    let format: TableFormat = ctx.format.unwrap_or(Format::Csv).into();
    write_file(&dir.join(format!("table.{}", extension(format))), |w| {
        emit_table(w, &rows, format)
    })?;
    let mut gap = BufWriter::new(create(&dir.join("fig_band_gap.csv"))?);
    write_file(&dir.join("fig_omega_m.csv"), |w| {
        emit_figure_data(w, &mut gap, &rows)
    })?;
    gap.flush().map_err(io_failure)?;
    write_file(&dir.join("exclusions.csv"), |w| emit_exclusions(w, &rows))?;

    print!("{}", ScreenSummary::of(&rows));
    Ok(())
}

pub fn table(ctx: &Context, a: TableArgs) -> CliResult {
    let cfg = ctx.screen_config()?;
    let inputs = match &a.fixture {
        Some(path) => read_records(open(path)?)?,
        None => read_records(TABLE1_FIXTURE.as_bytes())?,
    };
    let rows = screen(&inputs, &cfg, &Overrides::default())?;
    let mut out = ctx.sink()?;
    emit_table(&mut out, &rows, ctx.format.unwrap_or(Format::Csv).into())
        .and_then(|_| out.flush())
        .map_err(io_failure)
}
