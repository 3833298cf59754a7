//! Datasets produced by the `spectrum`, `gamma-scan` and `figures`
//! subcommands.

use std::f64::consts::PI;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use eom_core::detection::{restricted_sidebands, unrestricted_sidebands};
use eom_core::dynamics::central_probabilities;
use eom_core::{bessel_j, modulation_index, spectral_scan, Error, ModulatorParams};
use serde_json::{json, Value};

use crate::config::{
    FilterConfig, Model, OutputConfig, ParamsConfig, RunConfig, DEFAULT_FILTER_HALF_WIDTH, DEFAULT_SCAN,
};
use crate::failure::{CliResult, Failure, IoContext};
use crate::grid::GridSpec;
use crate::output::{emit, Format, Table};

/// Coupling grid of the γ-dependence figures.
pub const FIGURE_GAMMA_GRID: GridSpec = GridSpec { start: 0.0, stop: 60.0, step: 0.25 };
/// Couplings of the three spectrum figures.
pub const FIGURE_GAMMAS: [f64; 3] = [2.0, 10.0, 24.25];

/// Relative count rate against filter tuning.
pub fn spectrum_table(cfg: &RunConfig) -> CliResult<Table> {
    let p = cfg.modulator()?;
    let filter = cfg.filter_spec()?;
    let display = cfg.scan.points();
    let offsets: Vec<f64> = display.iter().map(|x| x * cfg.display_unit).collect();
    let scan = spectral_scan(&p, &filter, &offsets)?;
    let mut table = Table::new(vec![if cfg.absolute { "omega_f" } else { "omega_f_display" }]);
    if cfg.model.restricted() {
        table.columns.push("p_rel_restricted");
    }
    if cfg.model.unrestricted() {
        table.columns.push("p_rel_unrestricted");
    }
    for (i, &x) in display.iter().enumerate() {
        let mut row = vec![if cfg.absolute { p.carrier() + offsets[i] } else { x }];
        if cfg.model.restricted() {
            row.push(scan.restricted[i]);
        }
        if cfg.model.unrestricted() {
            row.push(scan.unrestricted[i]);
        }
        table.rows.push(row);
    }
    Ok(table)
}

/// Occupation of mode `dm` against the coupling γ.
pub fn gamma_scan_table(cfg: &RunConfig, dm: i64, grid: &GridSpec) -> CliResult<Table> {
    let p = cfg.modulator()?;
    let spin = p.spin();
    let center = spin.central_index().ok_or(Error::NoCentralMode(spin))?;
    if dm.unsigned_abs() as f64 > spin.value() {
        return Err(Failure::invalid(format!("offset {dm} lies outside the {} modes of S = {spin}", spin.dim())));
    }
    grid.validate().map_err(Failure::invalid)?;
    let row_index = (center as i64 + dm) as usize;
    let mut table = Table::new(vec!["gamma"]);
    if cfg.model.restricted() {
        table.columns.push("p_restricted");
    }
    if cfg.model.unrestricted() {
        table.columns.push("p_unrestricted");
    }
    for g in grid.points() {
        let pg = p.with_gamma(g)?;
        let mut row = vec![g];
        if cfg.model.restricted() {
            row.push(central_probabilities(&pg)?[row_index]);
        }
        if cfg.model.unrestricted() {
            let j = bessel_j(dm, modulation_index(pg.detuning(), g, pg.t()).mu);
            row.push(j * j);
        }
        table.rows.push(row);
    }
    Ok(table)
}

/// Sideband weights of both models on a common range of offsets; the
/// restricted weight is zero beyond `|Δm| = S`.
pub fn sideband_table(p: &ModulatorParams) -> CliResult<Table> {
    let restricted = restricted_sidebands(p)?;
    let unrestricted = unrestricted_sidebands(p)?;
    let m = unrestricted.last().map_or(0, |r| r.0).max(restricted.last().map_or(0, |r| r.0));
    let lookup = |rows: &[(i64, f64)], dm: i64| rows.iter().find(|r| r.0 == dm).map_or(0.0, |r| r.1);
    let mut table = Table::new(vec!["dm", "weight_restricted", "weight_unrestricted"]);
    for dm in -m..=m {
        table.rows.push(vec![dm as f64, lookup(&restricted, dm), lookup(&unrestricted, dm)]);
    }
    Ok(table)
}

pub fn run_spectrum(cfg: &RunConfig) -> CliResult<()> {
    let table = spectrum_table(cfg)?;
    let manifest = json!({ "command": "spectrum", "config": cfg.manifest() });
    emit(cfg.output.path.as_deref(), &table.render(cfg.output.format, manifest))
}

pub fn run_gamma_scan(cfg: &RunConfig, dm: i64, grid: &GridSpec) -> CliResult<()> {
    let table = gamma_scan_table(cfg, dm, grid)?;
    let manifest = json!({ "command": "gamma-scan", "config": cfg.manifest(), "dm": dm, "gamma_grid": grid });
    emit(cfg.output.path.as_deref(), &table.render(cfg.output.format, manifest))
}

/// One of the five preset figures, or all of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureSelector {
    One(u8),
    All,
}

impl FigureSelector {
    pub fn figures(self) -> Vec<u8> {
        match self {
            FigureSelector::One(n) => vec![n],
            FigureSelector::All => (1..=5).collect(),
        }
    }
}

impl FromStr for FigureSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(FigureSelector::All),
            _ => match s.parse::<u8>() {
                Ok(n @ 1..=5) => Ok(FigureSelector::One(n)),
                _ => Err(format!("expected a figure number 1..5 or \"all\", got {s:?}")),
            },
        }
    }
}

impl fmt::Display for FigureSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FigureSelector::One(n) => write!(f, "{n}"),
            FigureSelector::All => f.write_str("all"),
        }
    }
}

/// Preset configuration: `S = 3`, `Ω = 30`, `ω = 0.1`, `T = 2π/Ω`,
/// filter half-width 4, one display unit equal to `Ω/30`.
pub fn figure_config(figure: u8) -> RunConfig {
    let omega = 30.0;
    let gamma = match figure {
        1..=3 => FIGURE_GAMMAS[figure as usize - 1],
        _ => 0.0,
    };
    RunConfig {
        params: ParamsConfig {
            s: 3.0,
            omega,
            omega_mw: omega - 0.1,
            detuning: 0.1,
            gamma,
            t: 2.0 * PI / omega,
            m_tilde: 0.0,
        },
        filter: FilterConfig { half_width: DEFAULT_FILTER_HALF_WIDTH },
        scan: DEFAULT_SCAN,
        model: Model::Both,
        output: OutputConfig { path: None, format: Format::Csv },
        display_unit: omega / 30.0,
        absolute: false,
    }
}

/// Sideband offset plotted by the γ-dependence figures.
pub fn figure_offset(figure: u8) -> Option<i64> {
    match figure {
        4 => Some(0),
        5 => Some(2),
        _ => None,
    }
}

fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, contents).io_context(|| format!("cannot write {}", path.display()))?;
    Ok(path)
}

/// Writes the datasets of one figure and its manifest into `dir`.
pub fn write_figure(figure: u8, dir: &Path) -> CliResult<Vec<PathBuf>> {
    if !(1..=5).contains(&figure) {
        return Err(Failure::invalid(format!("no figure {figure}; expected 1..5")));
    }
    fs::create_dir_all(dir).io_context(|| format!("cannot create {}", dir.display()))?;
    let cfg = figure_config(figure);
    let mut files = Vec::new();
    let mut manifest = json!({ "figure": figure, "config": cfg.manifest() });
    match figure_offset(figure) {
        None => {
            manifest["command"] = Value::from("spectrum");
            let spectrum = spectrum_table(&cfg)?;
            files.push(write_file(dir, &format!("fig{figure}_spectrum.csv"), &spectrum.to_csv())?);
            let sidebands = sideband_table(&cfg.modulator()?)?;
            files.push(write_file(dir, &format!("fig{figure}_sidebands.csv"), &sidebands.to_csv())?);
        }
        Some(dm) => {
            manifest["command"] = Value::from("gamma-scan");
            manifest["dm"] = Value::from(dm);
            manifest["gamma_grid"] = serde_json::to_value(FIGURE_GAMMA_GRID).expect("grid serializes");
            let scan = gamma_scan_table(&cfg, dm, &FIGURE_GAMMA_GRID)?;
            files.push(write_file(dir, &format!("fig{figure}_gamma_scan.csv"), &scan.to_csv())?);
        }
    }
    let names: Vec<Value> =
        files.iter().filter_map(|p| p.file_name()).map(|n| Value::from(n.to_string_lossy().into_owned())).collect();
    manifest["files"] = Value::Array(names);
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    files.push(write_file(dir, &format!("fig{figure}_manifest.json"), &text)?);
    Ok(files)
}
