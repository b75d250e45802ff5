//! `kvstring`: spectra, ISS certificates, simulations and bound
//! verification for the clamped-free Kelvin–Voigt string.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] kvstring::Error),
    #[error("{0} bound violation(s) found")]
    Violations(usize),
}

impl CliError {
    /// 1 config, 2 spectral assumption, 3 incompatible data, 4 bound violation.
    pub fn exit_code(&self) -> u8 {
        use kvstring::Error as E;
        match self {
            CliError::Config(_) => 1,
            CliError::Core(E::AssumptionViolated { .. } | E::RieszConstantDegenerate { .. }) => 2,
            CliError::Core(E::CompatibilityViolated { .. }) => 3,
            CliError::Core(_) => 1,
            CliError::Violations(_) => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "kvstring",
    version,
    about = "Kelvin–Voigt string: spectrum, ISS certificate, simulation, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverChoice {
    Spectral,
    Fd,
    Both,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// Experiment description (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `outputs.directory`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalue table `spectrum.csv`.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        k_max: usize,
    },
    /// ISS constants `certificate.json`.
    Certificate {
        #[command(flatten)]
        common: Common,
    },
    /// Trajectory CSVs from the spectral and/or finite-difference solver.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = SolverChoice::Spectral)]
        solver: SolverChoice,
    },
    /// Checks both ISS estimates along simulated trajectories.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Seed of the random scenario suite; overrides `verify.seed`.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, hide = true)]
        debug_c1_scale: Option<f64>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let load = |common: &Common| -> Result<(config::ExperimentConfig, PathBuf), CliError> {
        let cfg = config::ExperimentConfig::load(&common.config)?;
        let out = common.out.clone().unwrap_or_else(|| cfg.outputs.directory.clone());
        std::fs::create_dir_all(&out).map_err(|e| CliError::Config(format!("cannot create {}: {e}", out.display())))?;
        Ok((cfg, out))
    };
    match cli.command {
        Command::Spectrum { common, k_max } => {
            let (cfg, out) = load(&common)?;
            commands::spectrum(&cfg, &out, k_max)
        }
        Command::Certificate { common } => {
            let (cfg, out) = load(&common)?;
            commands::certificate(&cfg, &out)
        }
        Command::Simulate { common, solver } => {
            let (cfg, out) = load(&common)?;
            commands::simulate(&cfg, &out, solver)
        }
        Command::Verify { common, seed, debug_c1_scale } => {
            let (cfg, out) = load(&common)?;
            commands::verify(&cfg, &out, seed, debug_c1_scale.unwrap_or(1.0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("kvstring: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
