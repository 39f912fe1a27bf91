//! Command-line front end for `parabound`.
//!
//! ```text
//! parabound <solve|bound|optimize|sweep|verify> --config <path> [--output <path>] [--format json|csv] [--quiet]
//! ```
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or configuration
//! error, 3 numerical failure.

pub mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

pub use config::{load_config, parse_config, ConfigError, ParseError, RunSpec, ValidationError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Verification(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => EXIT_VERIFY,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Usage(_) | CliError::Config(_) | CliError::Io(_) => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    /// Transfer matrix, Bogoliubov coefficients and scattering data.
    Solve,
    /// Every requested bound on |β|².
    Bound,
    /// Variationally optimized probe and its bound.
    Optimize,
    /// Exact |β|² and bounds over a grid of one profile parameter.
    Sweep,
    /// Invariant and dominance suite over the built-in profile library.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "parabound", version, about = "Transfer matrices and Bogoliubov bounds for parametric oscillators")]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Run specification (`key = value` lines).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Suppress the summary on stderr.
    #[arg(long)]
    quiet: bool,
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&args) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("parabound: {e}");
            e.exit_code()
        }
    }
}

fn execute(args: &Args) -> Result<(), CliError> {
    let flag_format = args.format.map(|f| match f {
        FormatArg::Json => config::Format::Json,
        FormatArg::Csv => config::Format::Csv,
    });
    let (outcome, destination) = if args.command == Command::Verify {
        if args.config.is_some() {
            return Err(CliError::Usage("verify runs the built-in library and takes no --config".into()));
        }
        (commands::verify(flag_format.unwrap_or(config::Format::Json)), args.output.clone())
    } else {
        let Some(path) = &args.config else {
            return Err(CliError::Usage("--config <path> is required for this command".into()));
        };
        let spec = load_config(path)?;
        let default = if args.command == Command::Sweep { config::Format::Csv } else { config::Format::Json };
        let format = flag_format.or(spec.format).unwrap_or(default);
        let outcome = match args.command {
            Command::Solve => commands::solve(&spec, format)?,
            Command::Bound => commands::bound(&spec, format)?,
            Command::Optimize => commands::optimize(&spec, format)?,
            Command::Sweep => commands::sweep(&spec, format)?,
            Command::Verify => unreachable!(),
        };
        (outcome, args.output.clone().or(spec.output.clone()))
    };

    match &destination {
        Some(path) => {
            std::fs::write(path, &outcome.output.bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&outcome.output.bytes).and_then(|_| out.flush()).map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    if !args.quiet {
        eprintln!("{}", outcome.output.summary);
    }
    match outcome.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}
