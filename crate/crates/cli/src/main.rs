//! `hybridlattice`: coupling profiles, effective parameters, lattice
//! dispersion, validation suites and stability scans from a JSON config.

mod commands;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::scan::GridRange;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "hybridlattice", version, about = "Flux-qubit / NV-ensemble hybrid chain analysis")]
pub struct Cli {
    /// JSON device configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file; stdout when omitted. A `<out>.manifest.json` is written beside it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Curves default to CSV; reports are always JSON.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Seed for the randomised property suites.
    #[arg(long, global = true, default_value_t = 2026)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Single-spin coupling J^(m) along the crystal for every configured qubit.
    CouplingProfile {
        /// Interior sample points across each crystal
        #[arg(long, default_value_t = 99)]
        points: usize,
    },
    /// Dispersive coefficients and effective boson parameters (JSON).
    EffectiveParams {
        /// Also report the qubit frequency that would give g/nu_s equal to this ratio.
        #[arg(long, value_name = "RATIO")]
        solve_nu_q: Option<f64>,
    },
    /// Quasi-particle dispersion of the periodic array.
    Dispersion {
        /// Chain length used for the ground-state energy (default 64 or the config's lattice.sites)
        #[arg(long)]
        sites: Option<usize>,
        /// Number of k intervals across [0, pi]
        #[arg(long, default_value_t = 200)]
        points: usize,
        /// Emit the stable part of an unstable band instead of failing.
        #[arg(long)]
        allow_unstable: bool,
        /// Add the tight-binding column.
        #[arg(long)]
        tight_binding: bool,
    },
    /// Run the full validation suite; exits 5 if any check fails.
    Validate {
        #[arg(long, default_value_t = hybridlattice::hilbert::DEFAULT_CUTOFF)]
        cutoff: usize,
    },
    /// Stability, gap and critical field over a (nu_s, g) or (nu_s, J) grid.
    StabilityScan {
        /// g values in GHz as min:max:count.
        #[arg(long)]
        g_range: Option<GridRange>,
        /// nu_s values in GHz as min:max:count.
        #[arg(long)]
        nus_range: Option<GridRange>,
        /// Coupling J values in GHz as min:max:count; g follows from the qubit detuning.
        #[arg(long)]
        j_range: Option<GridRange>,
    },
}

fn init_threads() -> CliResult<()> {
    let Ok(value) = std::env::var("HYBRIDLATTICE_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("HYBRIDLATTICE_THREADS must be a positive integer (got {value:?})")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size thread pool: {e}")))
}

fn run(cli: Cli) -> CliResult<()> {
    init_threads()?;
    let ctx = commands::Context { config: cli.config, out: cli.out, format: cli.format, seed: cli.seed };
    match cli.command {
        Command::CouplingProfile { points } => commands::profile::run(&ctx, points),
        Command::EffectiveParams { solve_nu_q } => commands::effective::run(&ctx, solve_nu_q),
        Command::Dispersion { sites, points, allow_unstable, tight_binding } => {
            commands::dispersion::run(&ctx, sites, points, allow_unstable, tight_binding)
        }
        Command::Validate { cutoff } => commands::validate::run(&ctx, cutoff),
        Command::StabilityScan { g_range, nus_range, j_range } => {
            commands::scan::run(&ctx, g_range, nus_range, j_range)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
