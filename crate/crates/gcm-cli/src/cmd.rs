//! Implementations of the `gcm` subcommands. Each command has an in-memory
//! core (returning the bytes it would write) so determinism is testable
//! without touching the filesystem.

use std::path::Path;

use rayon::prelude::*;

use gcm_core::evolve::system_cov;
use gcm_core::gstate::{SingleModeSpec, PHYSICALITY_TOL};
use gcm_core::info::{info_record, InfoRecord};
use gcm_core::nonmarkov::phase_diagram;
use gcm_core::optics::BSAngle;

use crate::config::{Config, EnvCfg, PhaseCfg};
use crate::csvio::{self, fmt_f64};
use crate::manifest::RunManifest;
use crate::svg;
use crate::{CliError, CliResult};

/// Builds a rayon pool honoring `GCM_THREADS` (defaults to the logical core
/// count).
pub fn thread_pool() -> CliResult<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var("GCM_THREADS") {
        let n: usize = raw
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| {
                CliError::Config(format!("GCM_THREADS: `{raw}` is not a positive integer"))
            })?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| CliError::Io(format!("thread pool: {e}")))
}

/// Mutual-information series with a per-step physicality gate.
pub fn evolve_records(cfg: &Config) -> CliResult<Vec<InfoRecord>> {
    let scenario = cfg.to_scenario()?;
    let mut records = Vec::with_capacity(scenario.l_max);
    for l in 1..=scenario.l_max {
        let sigma = system_cov(&scenario, l)?;
        let min_eig = sigma.min_physical_eig();
        if min_eig < -PHYSICALITY_TOL {
            return Err(CliError::Unphysical(format!(
                "sigma_ABC at L = {l}: min eig of sigma + (i/2) Omega is {min_eig:.3e}"
            )));
        }
        records.push(info_record(&sigma, l)?);
    }
    Ok(records)
}

/// The series CSV body for one config.
pub fn evolve_csv(cfg: &Config) -> CliResult<String> {
    Ok(csvio::series_csv(&evolve_records(cfg)?))
}

pub fn run_evolve(cfg: &Config, out_dir: &Path) -> CliResult<Vec<String>> {
    if cfg.sweep.is_some() {
        return Err(CliError::Config(
            "config declares a sweep axis; use `gcm sweep`".into(),
        ));
    }
    let csv = evolve_csv(cfg)?;
    std::fs::create_dir_all(out_dir)?;
    std::fs::write(out_dir.join("series.csv"), &csv)?;
    let outputs = vec!["series.csv".to_string()];
    RunManifest::new("evolve", cfg, outputs.clone()).write(out_dir)?;
    Ok(outputs)
}

/// The environment spec used for channel-divisibility commands, which need
/// one identical spec for every environment mode.
pub fn uniform_env_spec(env: &EnvCfg) -> CliResult<SingleModeSpec> {
    let spec = match env {
        EnvCfg::Vacuum => SingleModeSpec::vacuum(),
        EnvCfg::SqueezedSame { r, phi_pi } => {
            SingleModeSpec::new(0.0, *r, phi_pi * std::f64::consts::PI)?
        }
        EnvCfg::Thermal { n } => SingleModeSpec::new(*n, 0.0, 0.0)?,
        EnvCfg::SqueezedAlternative { .. } | EnvCfg::List(_) => {
            return Err(CliError::Config(
                "env: channel divisibility needs identical environment modes \
                 (vacuum, squeezed_same or thermal)"
                    .into(),
            ))
        }
    };
    Ok(spec)
}

fn grid(points: usize) -> CliResult<Vec<BSAngle>> {
    (0..points)
        .map(|i| {
            let frac = 0.5 * i as f64 / (points - 1) as f64;
            BSAngle::from_pi_multiple(frac).map_err(CliError::from)
        })
        .collect()
}

/// The phase CSV body for one config.
pub fn phase_csv(cfg: &Config) -> CliResult<String> {
    let phase: PhaseCfg = cfg.phase.clone().unwrap_or_default();
    let env = uniform_env_spec(&cfg.env)?;
    let se = grid(phase.se_points)?;
    let ee = grid(phase.ee_points)?;
    let diagram = phase_diagram(&se, &ee, phase.l, &env)?;
    Ok(csvio::phase_csv(&diagram))
}

pub fn run_phase(cfg: &Config, out_dir: &Path) -> CliResult<Vec<String>> {
    let csv = phase_csv(cfg)?;
    std::fs::create_dir_all(out_dir)?;
    std::fs::write(out_dir.join("phase.csv"), &csv)?;
    let outputs = vec!["phase.csv".to_string()];
    RunManifest::new("phase", cfg, outputs.clone()).write(out_dir)?;
    Ok(outputs)
}

/// One sweep point: the axis value, file name, CSV body and series minimum
/// of I3.
pub struct SweepPoint {
    pub value: f64,
    pub file: String,
    pub csv: String,
    pub min_i3: f64,
}

/// Computes every sweep point (in axis order) and the index CSV.
pub fn sweep_outputs(cfg: &Config) -> CliResult<(Vec<SweepPoint>, String)> {
    let points = cfg.sweep_points()?;
    let pool = thread_pool()?;
    let computed: Vec<CliResult<(Vec<InfoRecord>, f64)>> = pool.install(|| {
        points
            .par_iter()
            .map(|(value, point_cfg)| Ok((evolve_records(point_cfg)?, *value)))
            .collect()
    });
    let mut out = Vec::with_capacity(points.len());
    let mut index = String::from("point,value,file,min_I3\n");
    for (i, result) in computed.into_iter().enumerate() {
        let (records, value) = result?;
        let min_i3 = records.iter().map(|r| r.i3).fold(f64::INFINITY, f64::min);
        let file = format!("point_{i:03}.csv");
        index.push_str(&format!("{i},{},{file},{}\n", fmt_f64(value), fmt_f64(min_i3)));
        out.push(SweepPoint { value, file, csv: csvio::series_csv(&records), min_i3 });
    }
    Ok((out, index))
}

pub fn run_sweep(cfg: &Config, out_dir: &Path) -> CliResult<Vec<String>> {
    let (points, index) = sweep_outputs(cfg)?;
    std::fs::create_dir_all(out_dir)?;
    let mut outputs = Vec::with_capacity(points.len() + 1);
    for p in &points {
        std::fs::write(out_dir.join(&p.file), &p.csv)?;
        outputs.push(p.file.clone());
    }
    std::fs::write(out_dir.join("index.csv"), &index)?;
    outputs.push("index.csv".to_string());
    RunManifest::new("sweep", cfg, outputs.clone()).write(out_dir)?;
    Ok(outputs)
}

/// Renders selected columns of the input CSVs into one SVG.
pub fn plot_svg(inputs: &[(String, String)], columns: &[String]) -> CliResult<String> {
    if inputs.is_empty() {
        return Err(CliError::Config("plot: no input CSVs given".into()));
    }
    let mut series = Vec::new();
    let mut x_label = String::new();
    for (name, text) in inputs {
        let table = csvio::parse_csv(text)?;
        if x_label.is_empty() {
            x_label = table.columns[0].clone();
        }
        series.extend(svg::table_series(&table, name, columns)?);
    }
    let y_label = columns.join(", ");
    svg::render(&series, &x_label, &y_label)
}

pub fn run_plot(paths: &[std::path::PathBuf], columns: &[String], out_dir: &Path) -> CliResult<Vec<String>> {
    let mut inputs = Vec::new();
    for path in paths {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        inputs.push((stem, text));
    }
    let svg = plot_svg(&inputs, columns)?;
    std::fs::create_dir_all(out_dir)?;
    std::fs::write(out_dir.join("plot.svg"), &svg)?;
    Ok(vec!["plot.svg".to_string()])
}

/// Runs the invariant suite, printing one line per check; error when any
/// fails.
pub fn run_check() -> CliResult<()> {
    let outcomes = crate::checks::run_all();
    let mut failures = 0;
    for outcome in &outcomes {
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("{tag} {} — {}", outcome.name, outcome.detail);
        if !outcome.pass {
            failures += 1;
        }
    }
    println!();
    crate::checks::print_closed_form_table();
    println!();
    println!(
        "{} checks, {} failure(s)",
        outcomes.len(),
        failures
    );
    if failures > 0 {
        return Err(CliError::ChecksFailed(failures));
    }
    Ok(())
}
