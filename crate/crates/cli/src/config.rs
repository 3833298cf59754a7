//! Run configuration: defaults, an optional JSON file and command-line
//! flags, merged in that order of increasing precedence.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use eom_core::{FilterSpec, ModulatorParams, Spin};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::failure::{CliResult, Failure, IoContext};
use crate::grid::GridSpec;
use crate::output::Format;

/// Environment variable naming a configuration file.
pub const CONFIG_ENV: &str = "EOM_CONFIG";

pub const DEFAULT_SPIN: f64 = 3.0;
pub const DEFAULT_OMEGA: f64 = 30.0;
pub const DEFAULT_DETUNING: f64 = 0.1;
pub const DEFAULT_GAMMA: f64 = 2.0;
pub const DEFAULT_FILTER_HALF_WIDTH: f64 = 4.0;
pub const DEFAULT_SCAN: GridSpec = GridSpec { start: -60.0, stop: 60.0, step: 0.5 };
/// One display unit of frequency is `Ω` divided by this.
pub const DISPLAY_DIVISOR: f64 = 30.0;

/// Relative mismatch tolerated between redundant file entries.
const CONSISTENCY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Restricted,
    Unrestricted,
    Both,
}

impl Model {
    pub fn restricted(self) -> bool {
        matches!(self, Model::Restricted | Model::Both)
    }

    pub fn unrestricted(self) -> bool {
        matches!(self, Model::Unrestricted | Model::Both)
    }
}

/// Physical and run parameters shared by the data-producing subcommands.
#[derive(Args, Clone, Debug, Default)]
pub struct ParamArgs {
    /// Mode parameter S; 2S+1 optical modes interact
    #[arg(long = "s", value_name = "HALF_INT")]
    pub s: Option<f64>,
    /// Optical mode spacing Ω
    #[arg(long)]
    pub omega: Option<f64>,
    /// Microwave frequency Ω̃
    #[arg(long, conflicts_with = "detune", allow_hyphen_values = true)]
    pub omega_mw: Option<f64>,
    /// Detuning ω = Ω − Ω̃
    #[arg(long, allow_hyphen_values = true)]
    pub detune: Option<f64>,
    /// Interaction parameter γ
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Interaction time T
    #[arg(long, conflicts_with = "period_t")]
    pub t: Option<f64>,
    /// Use T = 2π/Ω
    #[arg(long)]
    pub period_t: bool,
    /// Central mode index m̃ (carrier at m̃·Ω)
    #[arg(long, allow_hyphen_values = true)]
    pub m_tilde: Option<f64>,
    /// Filter half-width at height 1/e, absolute frequency units
    #[arg(long)]
    pub filter_hw: Option<f64>,
    /// Filter tuning grid in display units
    #[arg(long, value_name = "START:STOP:STEP", allow_hyphen_values = true)]
    pub scan: Option<GridSpec>,
    #[arg(long, value_enum)]
    pub model: Option<Model>,
    /// Output file; standard output when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Report absolute filter frequencies instead of display units
    #[arg(long)]
    pub absolute: bool,
    /// Frequency per display unit; Ω/30 when absent
    #[arg(long)]
    pub display_unit: Option<f64>,
}

/// Configuration file contents; every entry is optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PartialConfig {
    pub params: PartialParams,
    pub filter: PartialFilter,
    pub scan: Option<GridSpec>,
    pub model: Option<Model>,
    pub output: PartialOutput,
    pub display_unit: Option<f64>,
    pub absolute: Option<bool>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PartialParams {
    pub s: Option<f64>,
    pub omega: Option<f64>,
    pub omega_mw: Option<f64>,
    pub detuning: Option<f64>,
    pub gamma: Option<f64>,
    pub t: Option<f64>,
    pub period_t: Option<bool>,
    pub m_tilde: Option<f64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PartialFilter {
    pub half_width: Option<f64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PartialOutput {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

/// Fully resolved configuration; serialized as the run manifest.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub params: ParamsConfig,
    pub filter: FilterConfig,
    pub scan: GridSpec,
    pub model: Model,
    pub output: OutputConfig,
    pub display_unit: f64,
    pub absolute: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParamsConfig {
    pub s: f64,
    pub omega: f64,
    pub omega_mw: f64,
    pub detuning: f64,
    pub gamma: f64,
    pub t: f64,
    pub m_tilde: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FilterConfig {
    pub half_width: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    pub format: Format,
}

/// The file named by `flag`, else by `$EOM_CONFIG`.
pub fn config_path(flag: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf).or_else(|| std::env::var_os(CONFIG_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
}

pub fn load_partial(path: Option<&Path>) -> CliResult<PartialConfig> {
    let Some(path) = path else {
        return Ok(PartialConfig::default());
    };
    let text = fs::read_to_string(path).io_context(|| format!("cannot read config {}", path.display()))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Invalid(anyhow::Error::new(e).context(format!("bad config {}", path.display()))))
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= CONSISTENCY_TOL * a.abs().max(b.abs()).max(1.0)
}

fn finite(name: &str, v: f64) -> CliResult<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Failure::invalid(format!("{name} must be finite, got {v}")))
    }
}

impl RunConfig {
    pub fn resolve(file: &PartialConfig, flags: &ParamArgs) -> CliResult<Self> {
        let fp = &file.params;
        let s = finite("s", flags.s.or(fp.s).unwrap_or(DEFAULT_SPIN))?;
        let omega = finite("omega", flags.omega.or(fp.omega).unwrap_or(DEFAULT_OMEGA))?;
        let detuning = match (flags.omega_mw, flags.detune) {
            (Some(mw), _) => omega - finite("omega_mw", mw)?,
            (None, Some(d)) => d,
            (None, None) => match (fp.omega_mw, fp.detuning) {
                (Some(mw), Some(d)) if !close(omega - mw, d) => {
                    return Err(Failure::invalid(format!(
                        "config gives omega_mw = {mw} and detuning = {d}, inconsistent with omega = {omega}"
                    )))
                }
                (_, Some(d)) => d,
                (Some(mw), None) => omega - mw,
                (None, None) => DEFAULT_DETUNING,
            },
        };
        let detuning = finite("detuning", detuning)?;
        let period = 2.0 * PI / omega;
        let t = match (flags.t, flags.period_t) {
            (Some(t), _) => t,
            (None, true) => period,
            (None, false) => match (fp.t, fp.period_t) {
                (Some(t), Some(true)) if !close(t, period) => {
                    return Err(Failure::invalid(format!("config gives t = {t} together with period_t")))
                }
                (Some(t), _) => t,
                (None, _) => period,
            },
        };
        let params = ParamsConfig {
            s,
            omega,
            omega_mw: omega - detuning,
            detuning,
            gamma: finite("gamma", flags.gamma.or(fp.gamma).unwrap_or(DEFAULT_GAMMA))?,
            t: finite("t", t)?,
            m_tilde: finite("m_tilde", flags.m_tilde.or(fp.m_tilde).unwrap_or(0.0))?,
        };
        let half_width = flags.filter_hw.or(file.filter.half_width).unwrap_or(DEFAULT_FILTER_HALF_WIDTH);
        let scan = flags.scan.or(file.scan).unwrap_or(DEFAULT_SCAN);
        scan.validate().map_err(Failure::invalid)?;
        let display_unit = flags.display_unit.or(file.display_unit).unwrap_or(omega / DISPLAY_DIVISOR);
        if !(display_unit.is_finite() && display_unit > 0.0) {
            return Err(Failure::invalid(format!("display unit must be positive, got {display_unit}")));
        }
        let cfg = RunConfig {
            params,
            filter: FilterConfig { half_width },
            scan,
            model: flags.model.or(file.model).unwrap_or(Model::Both),
            output: OutputConfig {
                path: flags.out.clone().or_else(|| file.output.path.clone()),
                format: flags.format.or(file.output.format).unwrap_or(Format::Csv),
            },
            display_unit,
            absolute: flags.absolute || file.absolute.unwrap_or(false),
        };
        cfg.modulator()?;
        cfg.filter_spec()?;
        Ok(cfg)
    }

    pub fn modulator(&self) -> CliResult<ModulatorParams> {
        let p = &self.params;
        let spin = Spin::new(p.s)?;
        Ok(ModulatorParams::with_detuning(spin, p.omega, p.detuning, p.gamma, p.t)?.with_m_tilde(p.m_tilde)?)
    }

    pub fn filter_spec(&self) -> CliResult<FilterSpec> {
        Ok(FilterSpec::new(self.filter.half_width)?)
    }

    pub fn manifest(&self) -> Value {
        serde_json::to_value(self).expect("configuration serializes")
    }
}
