//! `vsheets`: spectra, thresholds, branches, verification suites and
//! evolution runs for rotating vortex sheets.

mod commands;
mod config;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use vortex_sheets::{BifurcationKind, Error, Scheme, Sign};

use config::{ConfigFile, RunConfig};

/// A failed run and the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub const USAGE: u8 = 2;
    pub const REFUSED: u8 = 3;
    pub const NUMERICAL: u8 = 4;
    pub const IO: u8 = 5;

    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: Self::USAGE, message: message.into() }
    }

    pub fn refused(message: impl Into<String>) -> Self {
        Self { code: Self::REFUSED, message: message.into() }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        Self { code: Self::NUMERICAL, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self { code: Self::IO, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) | Error::UnstableStep { .. } => Self::USAGE,
            Error::Inadmissible(_) => Self::REFUSED,
            Error::Parse(_) => Self::IO,
            _ => Self::NUMERICAL,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::io(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "vsheets",
    version,
    about = "Rotating vortex sheets with surface tension",
    after_help = "Settings are taken from --config first and then overridden by explicit flags.\n\
                  Config files hold `key = value` lines for modes, quad, tol, out and seed.\n\n\
                  Exit codes: 0 success, 2 usage, 3 refused (inadmissible point), 4 numerical failure, 5 I/O."
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Retained fold-modes N
    #[arg(long, global = true)]
    pub modes: Option<usize>,
    /// Quadrature nodes Q (default: max(256, 4mN) rounded to a multiple of 2m)
    #[arg(long, global = true)]
    pub quad: Option<usize>,
    /// Residual tolerance for continuation
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Output directory for data files
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized sweeps
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Text file of key=value defaults
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct PointArgs {
    /// speed, tension or vorticity
    #[arg(long)]
    pub kind: BifurcationKind,
    /// Foldness m
    #[arg(long)]
    pub m: usize,
    /// Speed c (fixed for tension)
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c: f64,
    /// Surface tension (fixed for speed and vorticity)
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Mean vorticity (fixed for speed and tension)
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub gamma: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Determinant of each linear block and the resulting frequency or growth rate
    Spectrum {
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        c: f64,
        #[arg(long)]
        sigma: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long)]
        nmax: usize,
    },
    /// Threshold, admissibility, collision, kernel and transversality report
    #[command(visible_alias = "kernel")]
    Thresholds {
        #[command(flatten)]
        point: PointArgs,
        /// plus or minus; both when omitted (ignored for tension)
        #[arg(long)]
        sign: Option<Sign>,
    },
    /// Trace a branch of steady sheets from a bifurcation point
    Branch {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value = "plus")]
        sign: Sign,
        /// Amplitude step
        #[arg(long, default_value_t = 1e-3)]
        ds: f64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// +1 or -1
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        direction: i32,
    },
    /// Run invariant checks and report measured values against tolerances
    Verify {
        #[arg(long, value_enum, default_value_t = verify::Suite::All)]
        suite: verify::Suite,
    },
    /// Evolve a branch row in time and compare with its rigid translation
    Evolve {
        /// Branch CSV written by `branch`
        #[arg(long)]
        input: PathBuf,
        /// Row index (0-based); the last row by default
        #[arg(long)]
        row: Option<usize>,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long, default_value_t = 0.1)]
        t_final: f64,
        /// imex or rk4
        #[arg(long, default_value = "imex")]
        scheme: Scheme,
        /// Fraction of top modes whose nonlinear part is zeroed
        #[arg(long, default_value_t = 1.0 / 3.0)]
        filter: f64,
        /// Record every `stride` steps
        #[arg(long, default_value_t = 1)]
        stride: usize,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    let file = match &cli.common.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let cfg = RunConfig::resolve(&cli.common, &file)?;
    match cli.command {
        Command::Spectrum { c, sigma, gamma, nmax } => commands::spectrum(&cfg, c, sigma, gamma, nmax),
        Command::Thresholds { point, sign } => commands::thresholds(&point, sign),
        Command::Branch { point, sign, ds, steps, direction } => {
            commands::branch(&cfg, &point, sign, ds, steps, direction)
        }
        Command::Verify { suite } => verify::run(&cfg, suite),
        Command::Evolve { input, row, dt, t_final, scheme, filter, stride } => {
            commands::evolve(&cfg, &input, row, dt, t_final, scheme, filter, stride)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(Failure::USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let label = match f.code {
                Failure::REFUSED => "refused",
                _ => "error",
            };
            eprintln!("{label}: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
