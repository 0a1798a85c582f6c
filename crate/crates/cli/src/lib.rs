//! Library side of the `spectrunc` binary: argument handling, the four
//! subcommands and CSV/JSON emission.

pub mod commands;
pub mod config;
pub mod output;

use std::fmt;

pub use commands::{cmd_bounds, cmd_curve, cmd_fuzzy, cmd_selftest};
pub use config::{Cli, Command, Family, Format, RunArgs, RunConfig};

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    /// Usage, configuration or I/O error.
    Usage = 1,
    /// A mathematical invariant was violated or could not be computed.
    Invariant = 2,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String, std::io::Error),
    Numeric(spectrunc_core::error::Error),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Config(_) | CliError::Io(..) => Exit::Usage,
            CliError::Numeric(_) => Exit::Invariant,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Io(path, e) => write!(f, "cannot write {path}: {e}"),
            CliError::Numeric(e) => write!(f, "numerical failure: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<spectrunc_core::error::Error> for CliError {
    fn from(e: spectrunc_core::error::Error) -> Self {
        CliError::Numeric(e)
    }
}

/// Runs a parsed command line and returns the exit code.
pub fn run(cli: &Cli) -> Exit {
    let result = RunConfig::from_args(&cli.args, &cli.command).and_then(|cfg| match &cli.command {
        Command::Curve => cmd_curve(&cfg),
        Command::Bounds => cmd_bounds(&cfg),
        Command::Fuzzy => cmd_fuzzy(&cfg),
        Command::Selftest { only, fault } => cmd_selftest(&cfg, only, fault.map(Into::into)),
    });
    result.unwrap_or_else(|e| {
        eprintln!("spectrunc: {e}");
        e.exit()
    })
}
