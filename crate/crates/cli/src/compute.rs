use std::io::Write;
use std::path::{Path, PathBuf};

use defect_loss::format::sci;
use defect_loss::screening::{host_from_record, read_records, DielectricSource, RawRecord};
use defect_loss::units::{angular_to_thz, ghz_to_angular, parse_concentration};
use defect_loss::{
    evaluate, DefectPopulation, DefectSpecies, HostDerived, LocalFieldModel, LossResult,
    PhysicsOptions, VelocityChoice,
};
use serde::{Deserialize, Serialize};

use crate::output::{compare, io_failure, json_failure, open, read_json, Context};
use crate::{CliResult, Failure, Format};

const VERIFY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Line-delimited JSON file holding the host record.
    #[arg(long, conflicts_with_all = ["formula", "density", "natoms", "volume", "bulk_gpa", "shear_gpa", "eps"])]
    record: Option<PathBuf>,
    /// Record to pick from `--record` when it holds several.
    #[arg(long, requires = "record")]
    id: Option<String>,
    #[arg(long)]
    formula: Option<String>,
    /// Mass density, g/cm³.
    #[arg(long)]
    density: Option<f64>,
    /// Atoms per cell.
    #[arg(long)]
    natoms: Option<u32>,
    /// Cell volume, Å³.
    #[arg(long)]
    volume: Option<f64>,
    /// Bulk modulus, GPa.
    #[arg(long)]
    bulk_gpa: Option<f64>,
    /// Shear modulus, GPa.
    #[arg(long)]
    shear_gpa: Option<f64>,
    /// Dielectric tensor: 1 (isotropic), 3 (diagonal) or 9 comma-separated values.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    eps: Option<Vec<f64>>,
    /// PBE band gap, eV.
    #[arg(long, default_value_t = 0.0)]
    gap_ev: f64,
    /// Defect species as `Z,N` with N suffixed `/cm3` or `/m3`; repeatable.
    #[arg(long = "defect", allow_hyphen_values = true)]
    defects: Vec<String>,
    /// Operating frequency, GHz.
    #[arg(long)]
    freq_ghz: Option<f64>,
    /// Local-field model: onsager, lorentz or unity.
    #[arg(long)]
    local_field: Option<String>,
    /// transverse, longitudinal, or a fitted velocity in m/s.
    #[arg(long)]
    velocity: Option<String>,
    /// Report the temperature below which the loss is temperature independent.
    #[arg(long)]
    temp_check: bool,
    /// Recompute a previous `--format json` output and compare.
    #[arg(long, conflicts_with_all = ["record", "formula"])]
    verify: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComputeInput {
    pub record: RawRecord,
    pub defects: DefectPopulation,
    pub frequency_ghz: f64,
    pub physics: PhysicsOptions,
    pub dielectric: DielectricSource,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComputeReport {
    pub input: ComputeInput,
    pub host: HostDerived,
    pub loss: LossResult,
}

impl ComputeInput {
    pub fn evaluate(self) -> CliResult<ComputeReport> {
        let material = host_from_record(&self.record, self.dielectric)?;
        let host = HostDerived::compute(&material, &self.physics)?;
        let loss = evaluate(&host, &self.defects, ghz_to_angular(self.frequency_ghz))?;
        Ok(ComputeReport {
            input: self,
            host,
            loss,
        })
    }
}

fn parse_defect(text: &str) -> CliResult<DefectSpecies> {
    let bad = |why: String| Failure::Input(format!("--defect `{text}`: {why}"));
    let (z, n) = text
        .split_once(',')
        .ok_or_else(|| bad("expected Z,N (e.g. 1,1e18/cm3)".into()))?;
    let z: f64 = z.trim().parse().map_err(|e| bad(format!("{e}")))?;
    let n = parse_concentration(n).map_err(|e| bad(e.to_string()))?;
    DefectSpecies::new(z, n).map_err(|e| bad(e.to_string()))
}

fn tensor(values: &[f64]) -> CliResult<[[f64; 3]; 3]> {
    let mut t = [[0.0; 3]; 3];
    match values {
        [e] => (0..3).for_each(|i| t[i][i] = *e),
        [a, b, c] => {
            t[0][0] = *a;
            t[1][1] = *b;
            t[2][2] = *c;
        }
        v if v.len() == 9 => (0..9).for_each(|k| t[k / 3][k % 3] = v[k]),
        v => {
            return Err(Failure::Input(format!(
                "--eps takes 1, 3 or 9 values, got {}",
                v.len()
            )))
        }
    }
    Ok(t)
}

fn record_from_file(path: &Path, id: Option<&str>) -> CliResult<RawRecord> {
    let inputs = read_records(open(path)?)?;
    let mut candidates = Vec::new();
    for input in inputs {
        match input.record {
            Ok(r) if id.is_none() || r.material_id.as_deref() == id => candidates.push(r),
            Ok(_) => {}
            Err(m) if id.is_none() || m.material_id.as_deref() == id => {
                return Err(Failure::Input(format!(
                    "{}:{}: malformed record: {}",
                    path.display(),
                    input.line,
                    m.message
                )))
            }
            Err(_) => {}
        }
    }
    match (candidates.len(), id) {
        (1, _) => Ok(candidates.remove(0)),
        (0, Some(id)) => Err(Failure::Input(format!(
            "no record `{id}` in {}",
            path.display()
        ))),
        (0, None) => Err(Failure::Input(format!(
            "{} holds no records",
            path.display()
        ))),
        (n, _) => Err(Failure::Input(format!(
            "{} holds {n} matching records; pick one with --id",
            path.display()
        ))),
    }
}

fn inline_record(a: &Args) -> CliResult<RawRecord> {
    fn need<T: Clone>(v: &Option<T>, flag: &str) -> CliResult<T> {
        v.clone().ok_or_else(|| {
            Failure::Input(format!("missing host parameter --{flag} (or use --record)"))
        })
    }
    Ok(RawRecord {
        material_id: Some("inline".into()),
        formula: Some(need(&a.formula, "formula")?),
        band_gap_pbe_ev: Some(a.gap_ev),
        is_magnetic: Some(false),
        density_g_per_cm3: Some(need(&a.density, "density")?),
        natoms: Some(need(&a.natoms, "natoms")?),
        volume_angstrom3: Some(need(&a.volume, "volume")?),
        bulk_modulus_vrh_gpa: Some(need(&a.bulk_gpa, "bulk-gpa")?),
        shear_modulus_vrh_gpa: Some(need(&a.shear_gpa, "shear-gpa")?),
        dielectric_total: Some(tensor(&need(&a.eps, "eps")?)?),
        ..RawRecord::default()
    })
}

fn build_input(ctx: &Context, a: &Args) -> CliResult<ComputeInput> {
    let cfg = ctx.screen_config()?;
    let record = match &a.record {
        Some(path) => record_from_file(path, a.id.as_deref())?,
        None => inline_record(a)?,
    };
    let defects = if a.defects.is_empty() {
        cfg.default_defects()
    } else {
        a.defects
            .iter()
            .map(|d| parse_defect(d))
            .collect::<CliResult<DefectPopulation>>()?
    };
    let frequency_ghz = a.freq_ghz.unwrap_or(cfg.frequency_ghz);
    if !(frequency_ghz.is_finite() && frequency_ghz > 0.0) {
        return Err(Failure::Input(format!(
            "--freq-ghz must be positive, got {frequency_ghz}"
        )));
    }
    let mut physics = cfg.physics();
    if let Some(m) = &a.local_field {
        physics.local_field = m.parse::<LocalFieldModel>()?;
    }
    if let Some(v) = &a.velocity {
        physics.velocity = v.parse::<VelocityChoice>()?;
    }
    Ok(ComputeInput {
        record,
        defects,
        frequency_ghz,
        physics,
        dielectric: cfg.dielectric,
    })
}

fn t_star_mk(report: &ComputeReport) -> f64 {
    report.loss.t_star * 1e3
}

fn write_text(out: &mut dyn Write, r: &ComputeReport, temp_check: bool) -> std::io::Result<()> {
    let h = &r.host;
    let l = &r.loss;
    writeln!(
        out,
        "material        {}",
        r.input.record.formula.as_deref().unwrap_or("?")
    )?;
    writeln!(out, "frequency       {} GHz", r.input.frequency_ghz)?;
    writeln!(out, "v_t             {} m/s", sci(h.v_t))?;
    writeln!(out, "v_l             {} m/s", sci(h.v_l))?;
    writeln!(
        out,
        "omega_m/2pi     {} THz",
        sci(angular_to_thz(h.omega_m))
    )?;
    writeln!(out, "n_r             {}", sci(h.n_r))?;
    writeln!(
        out,
        "field_factor    {} ({})",
        sci(h.field_factor),
        r.input.physics.local_field
    )?;
    writeln!(out, "A_c             {} m/s", sci(h.a_c))?;
    for (s, sigma) in r.input.defects.species().iter().zip(&l.sigma) {
        writeln!(
            out,
            "{:<16}{} m^2",
            format!("sigma(Z={})", s.z_eff),
            sci(*sigma)
        )?;
    }
    writeln!(out, "a               {} 1/m", sci(l.a))?;
    writeln!(out, "tan_delta       {}", sci(l.tan_delta))?;
    writeln!(out, "T*              {} K", sci(l.t_star))?;
    if temp_check {
        writeln!(
            out,
            "T* = {:.0} mK: the loss is temperature independent for T well below this",
            t_star_mk(r)
        )?;
    }
    Ok(())
}

fn write_csv(out: &mut dyn Write, r: &ComputeReport) -> std::io::Result<()> {
    let h = &r.host;
    let l = &r.loss;
    writeln!(out, "material,frequency_ghz,v_t_m_s,v_l_m_s,omega_m_thz,n_r,field_factor,a_c_m_s,a_per_m,tan_delta,t_star_k")?;
    let cells = [
        h.v_t,
        h.v_l,
        angular_to_thz(h.omega_m),
        h.n_r,
        h.field_factor,
        h.a_c,
        l.a,
        l.tan_delta,
        l.t_star,
    ]
    .map(sci);
    writeln!(
        out,
        "{},{},{}",
        r.input.record.formula.as_deref().unwrap_or(""),
        r.input.frequency_ghz,
        cells.join(",")
    )
}

pub fn run(ctx: &Context, a: Args) -> CliResult {
    if let Some(path) = &a.verify {
        let stored: ComputeReport = read_json(path)?;
        let recomputed = stored.input.clone().evaluate()?;
        let lhs = serde_json::to_value(&stored).map_err(json_failure)?;
        let rhs = serde_json::to_value(&recomputed).map_err(json_failure)?;
        compare(&lhs, &rhs, VERIFY_TOLERANCE, "$").map_err(Failure::Input)?;
        println!("verified {}", path.display());
        return Ok(());
    }

    let report = build_input(ctx, &a)?.evaluate()?;
    let mut out = ctx.sink()?;
    match ctx.format.unwrap_or(Format::Text) {
        Format::Text => write_text(&mut out, &report, a.temp_check).map_err(io_failure)?,
        Format::Csv => write_csv(&mut out, &report).map_err(io_failure)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &report).map_err(json_failure)?;
            writeln!(out).map_err(io_failure)?;
        }
    }
    out.flush().map_err(io_failure)?;
    if a.temp_check && ctx.format.is_some_and(|f| f != Format::Text) {
        eprintln!("T* = {:.0} mK", t_star_mk(&report));
    }
    Ok(())
}
