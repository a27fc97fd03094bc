//! `newstein`: batch front end. Structured JSON goes to stdout (or
//! `--output`), human-readable tables to stderr.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::RunConfig;

/// Exit codes. Clap reports usage errors with 2.
pub mod exit {
    pub const OK: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    pub const UNKNOWN_ALGEBRA: u8 = 3;
    pub const INVALID_PARAMETER: u8 = 4;
    pub const IO: u8 = 5;
    pub const COMPUTATION: u8 = 6;
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn invalid(m: impl Into<String>) -> Self {
        Failure { code: exit::INVALID_PARAMETER, message: m.into() }
    }

    pub fn io(m: impl Into<String>) -> Self {
        Failure { code: exit::IO, message: m.into() }
    }
}

impl From<newstein_core::Error> for Failure {
    fn from(e: newstein_core::Error) -> Self {
        use newstein_core::Error as E;
        let code = match &e {
            E::UnknownAlgebra(_) => exit::UNKNOWN_ALGEBRA,
            E::Io(_) => exit::IO,
            E::Modular(_) | E::NotInStabilizer(_) => exit::COMPUTATION,
            _ => exit::INVALID_PARAMETER,
        };
        Failure { code, message: e.to_string() }
    }
}

#[derive(Parser, Debug)]
#[command(name = "newstein", version, about = "Lie algebra, cohomology and representation checks for the New-Stein group")]
struct Cli {
    /// TOML file with defaults for seed, threads, method, output and representation parameters.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (overrides NEWSTEIN_THREADS and the config file).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Coeffs {
    Trivial,
    Adjoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RankMethod {
    Exact,
    Modular,
    /// Levi-invariant cochains on the ideal (adjoint coefficients, New-Stein labels only).
    Reduction,
}

/// Oscillator parameters; unset values come from the config file, then defaults.
#[derive(Args, Debug, Clone)]
pub struct RepArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub ell: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub cutoff: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub m0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub two_s: Option<i32>,
    #[arg(long, allow_hyphen_values = true)]
    pub two_j: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jacobi identity over all basis triples.
    Jacobi {
        #[arg(long, default_value = "newstein")]
        algebra: String,
    },
    /// Betti number of the Chevalley-Eilenberg complex.
    Cohomology {
        #[arg(long, default_value = "newstein")]
        algebra: String,
        #[arg(long, value_enum, default_value = "trivial")]
        coeffs: Coeffs,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum)]
        method: Option<RankMethod>,
        /// Primes for the modular method (default: three below 2^31).
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    #[command(subcommand)]
    Extensions(ExtensionsCommand),
    #[command(subcommand)]
    Grouplaw(GrouplawCommand),
    /// Eigenvalues of the mass operator on the interior levels.
    Spectrum {
        #[command(flatten)]
        rep: RepArgs,
    },
    /// Evolves a coefficient file by exp(-i tau K).
    Evolve {
        #[arg(long, allow_hyphen_values = true)]
        tau: f64,
        #[arg(long)]
        state: PathBuf,
        #[command(flatten)]
        rep: RepArgs,
    },
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Runs every acceptance criterion and emits one claim report each.
    VerifyAll {
        /// Restrict to these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Subcommand, Debug)]
enum ExtensionsCommand {
    /// Classifies the plane matrix [[beta, beta'], [gamma, gamma']].
    Classify {
        /// beta beta' gamma gamma' (rationals like 3/5 give an exact classification).
        #[arg(long, num_args = 4, allow_hyphen_values = true, value_names = ["BETA", "BETA_P", "GAMMA", "GAMMA_P"])]
        matrix: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum GrouplawCommand {
    /// Associativity, inverse and derivative-at-identity deviations.
    Check {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Also check the law extended by K (case 7).
        #[arg(long)]
        extended: bool,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Printed generator formulas against finite differences of the representation.
    Generators {
        #[arg(long, default_value_t = 8)]
        points: usize,
        #[arg(long, default_value_t = 3)]
        functions: usize,
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
        #[command(flatten)]
        rep: RepArgs,
    },
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let cfg = RunConfig::resolve(cli.seed, cli.threads, cli.output, cli.config.as_deref())?;
    cfg.install_threads()?;
    let out = match cli.command {
        Command::Jacobi { algebra } => commands::jacobi(&algebra)?,
        Command::Cohomology { algebra, coeffs, degree, method, primes } => commands::cohomology(&cfg, &algebra, coeffs, degree, method, primes)?,
        Command::Extensions(ExtensionsCommand::Classify { matrix }) => commands::classify(&matrix)?,
        Command::Grouplaw(GrouplawCommand::Check { samples, extended }) => commands::grouplaw(&cfg, samples, extended)?,
        Command::Spectrum { rep } => commands::spectrum(&cfg, &rep)?,
        Command::Evolve { tau, state, rep } => commands::evolve(&cfg, tau, &state, &rep)?,
        Command::Oracle(OracleCommand::Generators { points, functions, tol, rep }) => commands::oracle(&cfg, points, functions, tol, &rep)?,
        Command::VerifyAll { only } => commands::verify_all(&cfg, &only)?,
    };
    commands::emit(&cfg, &out.body)?;
    Ok(out.code)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
