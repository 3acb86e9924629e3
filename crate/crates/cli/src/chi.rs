use std::io::Write;
use std::path::PathBuf;

use defect_loss::spectral::{
    acoustic_limit_check, nu_from_dos, read_dos_csv, sweep, sweep_grid, write_sweep_csv,
    Interpolation,
};
use defect_loss::SpectralDensity;
use serde_json::json;

use crate::output::{io_failure, json_failure, open, Context};
use crate::{CliResult, Failure, Format};

#[derive(Debug, clap::Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["debye", "dos"])))]
pub struct Args {
    /// Analytic Debye density of states.
    #[arg(long)]
    debye: bool,
    /// Debye cutoff, rad/s.
    #[arg(long, default_value_t = 1.0, requires = "debye")]
    omega_m: f64,
    /// Tabulated DOS (`omega_rad_per_s,rho_per_rad_per_s`).
    #[arg(long)]
    dos: Option<PathBuf>,
    /// Interpolation of a tabulated DOS: monotone or linear.
    #[arg(long, default_value = "monotone")]
    interp: String,
    /// ε = (M − M′)/M, below 1.
    #[arg(long, allow_hyphen_values = true)]
    eps_mass: f64,
    #[arg(long, default_value_t = 100)]
    points: usize,
    /// Sweep start, as a fraction of μ_max.
    #[arg(long, default_value_t = 1e-3)]
    z_min: f64,
    /// Sweep end, as a fraction of μ_max.
    #[arg(long, default_value_t = 0.99)]
    z_max: f64,
    /// Evaluate a single z (fraction of μ_max) instead of a sweep.
    #[arg(long, conflicts_with_all = ["points", "z_min", "z_max"])]
    z: Option<f64>,
}

fn density(a: &Args) -> CliResult<SpectralDensity> {
    match &a.dos {
        Some(path) => {
            let (omega, rho) = read_dos_csv(open(path)?)?;
            let kind: Interpolation = a.interp.parse()?;
            Ok(nu_from_dos(&omega, &rho, kind)?)
        }
        None => Ok(SpectralDensity::debye(a.omega_m)?),
    }
}

pub fn run(ctx: &Context, a: Args) -> CliResult {
    let density = density(&a)?;
    let zs = match a.z {
        Some(f) => vec![f * density.mu_max()],
        None => {
            if !(0.0..=1.0).contains(&a.z_min)
                || !(0.0..=1.0).contains(&a.z_max)
                || a.z_min > a.z_max
            {
                return Err(Failure::Input(format!(
                    "sweep range [{}, {}] must lie within [0, 1]",
                    a.z_min, a.z_max
                )));
            }
            sweep_grid(&density, a.z_min, a.z_max, a.points)
        }
    };
    let points = sweep(&density, a.eps_mass, &zs)?;
    let limit = acoustic_limit_check(&density, a.eps_mass, 1.0)?;

    let mut out = ctx.sink()?;
    match ctx.format.unwrap_or(Format::Csv) {
        Format::Json => {
            let doc = json!({ "points": points, "acoustic_limit": limit });
            serde_json::to_writer_pretty(&mut out, &doc).map_err(json_failure)?;
            writeln!(out).map_err(io_failure)?;
        }
        _ => write_sweep_csv(&mut out, &points, Some(&limit)).map_err(io_failure)?,
    }
    out.flush().map_err(io_failure)
}
