use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gcm_cli::config::Config;
use gcm_cli::{cmd, presets, CliError, CliResult};

/// Gaussian collision-model simulator: stroboscopic dissipative dynamics of
/// a three-mode bosonic system, mutual-information diagnostics, and channel
/// divisibility.
#[derive(Parser)]
#[command(name = "gcm", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigSource {
    /// Named figure preset.
    #[arg(long, conflicts_with = "config")]
    preset: Option<String>,
    /// JSON config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Match mode C thermally to B with n = sinh^2(xi_ab) instead of the
    /// convention-consistent (cosh(xi_ab) - 1)/2 (fig4 preset only).
    #[arg(long)]
    paper_literal_nc: bool,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

impl ConfigSource {
    fn resolve(&self) -> CliResult<Config> {
        match (&self.preset, &self.config) {
            (Some(name), None) => presets::preset(name, self.paper_literal_nc),
            (None, Some(path)) => {
                if self.paper_literal_nc {
                    return Err(CliError::Config(
                        "--paper-literal-nc only applies to the fig4 preset".into(),
                    ));
                }
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
                Config::from_json(&text)
            }
            (None, None) => Err(CliError::Config("give --preset NAME or --config FILE".into())),
            (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Mutual-information series for one scenario (series.csv).
    Evolve(ConfigSource),
    /// Non-Markovianity over the collision-angle plane (phase.csv).
    Phase(ConfigSource),
    /// One-axis parameter sweep (one series CSV per point plus index.csv).
    Sweep(ConfigSource),
    /// Run the invariant suite and exit nonzero on any failure.
    Check,
    /// Render CSV columns as an SVG line chart (plot.svg).
    Plot {
        /// Input CSV files.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Comma-separated column names to draw.
        #[arg(long, default_value = "I3", value_delimiter = ',')]
        columns: Vec<String>,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Evolve(src) => {
            let cfg = src.resolve()?;
            let outputs = cmd::run_evolve(&cfg, &src.out)?;
            for f in outputs {
                println!("{}", src.out.join(f).display());
            }
        }
        Command::Phase(src) => {
            let cfg = src.resolve()?;
            let outputs = cmd::run_phase(&cfg, &src.out)?;
            for f in outputs {
                println!("{}", src.out.join(f).display());
            }
        }
        Command::Sweep(src) => {
            let cfg = src.resolve()?;
            let outputs = cmd::run_sweep(&cfg, &src.out)?;
            for f in outputs {
                println!("{}", src.out.join(f).display());
            }
        }
        Command::Check => cmd::run_check()?,
        Command::Plot { inputs, columns, out } => {
            let outputs = cmd::run_plot(&inputs, &columns, &out)?;
            for f in outputs {
                println!("{}", out.join(f).display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gcm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
