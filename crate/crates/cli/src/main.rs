use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use eom_cli::commands::{run_gamma_scan, run_spectrum, write_figure, FigureSelector};
use eom_cli::config::{config_path, load_partial, ParamArgs, RunConfig};
use eom_cli::grid::GridSpec;
use eom_cli::verify::{run_suite, Level};
use eom_cli::{CliResult, Failure};

#[derive(Parser)]
#[command(
    name = "eom",
    version,
    about = "Electro-optic modulator sideband spectra: restricted su(2) and Bessel models"
)]
struct Cli {
    /// JSON configuration file; $EOM_CONFIG is used when absent
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Relative photon count rate against filter tuning
    Spectrum(ParamArgs),
    /// Occupation of one sideband against the interaction parameter
    GammaScan(GammaScanArgs),
    /// Write the preset figure datasets and manifests
    Figures(FiguresArgs),
    /// Run the numerical self-checks
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GammaScanArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Sideband offset Δm
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    dm: i64,
    /// Interaction parameter grid
    #[arg(long, value_name = "START:STOP:STEP", default_value = "0:60:0.25", allow_hyphen_values = true)]
    gamma_grid: GridSpec,
}

#[derive(Args)]
struct FiguresArgs {
    /// Figure number 1..5, or "all"
    selector: FigureSelector,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Level::Quick)]
    level: Level,
    /// Deliberately expect a wrong sign so that the run fails
    #[arg(long, hide = true)]
    negative_control: bool,
}

fn resolve(config: Option<&PathBuf>, flags: &ParamArgs) -> CliResult<RunConfig> {
    let file = load_partial(config_path(config.map(PathBuf::as_path)).as_deref())?;
    RunConfig::resolve(&file, flags)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Spectrum(flags) => run_spectrum(&resolve(cli.config.as_ref(), &flags)?),
        Command::GammaScan(args) => {
            run_gamma_scan(&resolve(cli.config.as_ref(), &args.params)?, args.dm, &args.gamma_grid)
        }
        Command::Figures(args) => {
            for figure in args.selector.figures() {
                for path in write_figure(figure, &args.out_dir)? {
                    println!("{}", path.display());
                }
            }
            Ok(())
        }
        Command::Verify(args) => {
            let checks = run_suite(args.level, args.negative_control);
            for c in &checks {
                println!("{c}");
            }
            let failed = checks.iter().filter(|c| !c.passed()).count();
            println!("{} of {} checks passed", checks.len() - failed, checks.len());
            if failed == 0 {
                Ok(())
            } else {
                Err(Failure::Verification(failed))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("eom: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
