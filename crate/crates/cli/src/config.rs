use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spectrunc_core::selftest::Fault;

use crate::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "spectrunc",
    version,
    about = "Spectral truncations: distance curves, error bounds and fuzzy sphere experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub args: RunArgs,
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Distance from the base point to each grid point, with the error band.
    Curve,
    /// Error constants and the Gromov-Hausdorff upper bound for a range of n.
    Bounds,
    /// Distances between coherent states, sphere error constant and quantization error.
    Fuzzy,
    /// Run the invariant suite and print a pass/fail table.
    Selftest {
        /// Comma-separated criterion numbers to run (default: all).
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
        /// Deliberately corrupt an input to check that the suite fails.
        #[arg(long, value_enum, hide = true)]
        fault: Option<FaultArg>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaultArg {
    CorruptGammaPrime,
}

impl From<FaultArg> for Fault {
    fn from(f: FaultArg) -> Self {
        match f {
            FaultArg::CorruptGammaPrime => Fault::CorruptGammaPrime,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Toeplitz,
    FejerRiesz,
    Fuzzy,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::Toeplitz => "toeplitz",
            Family::FejerRiesz => "fejer-riesz",
            Family::Fuzzy => "fuzzy",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Operator system family (default: toeplitz, or fuzzy for the fuzzy command).
    #[arg(long, value_enum, global = true)]
    pub family: Option<Family>,
    /// Truncation size, or the start of the range when --n-max is given.
    #[arg(long, default_value_t = 2, global = true)]
    pub n: usize,
    /// Last truncation size of the range (default: --n).
    #[arg(long, global = true)]
    pub n_max: Option<usize>,
    /// Grid points per curve.
    #[arg(long, default_value_t = 64, global = true)]
    pub x_steps: usize,
    /// Solver tolerance.
    #[arg(long, default_value_t = 1e-4, global = true)]
    pub tol: f64,
    /// Random samples for the lower-bound oracle and the quantization ratio.
    #[arg(long, default_value_t = 200, global = true)]
    pub samples: usize,
    #[arg(long, default_value_t = 42, global = true)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, env = "SPECTRUNC_THREADS", global = true)]
    pub threads: Option<usize>,
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
}

/// Validated settings shared by all subcommands.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub family: Family,
    pub n_min: usize,
    pub n_max: usize,
    pub x_steps: usize,
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
    /// 0 lets the pool pick.
    pub threads: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn from_args(args: &RunArgs, command: &Command) -> Result<Self, CliError> {
        let family = match (command, args.family) {
            (Command::Fuzzy, None) => Family::Fuzzy,
            (_, None) => Family::Toeplitz,
            (_, Some(f)) => f,
        };
        match (command, family) {
            (Command::Curve | Command::Bounds, Family::Fuzzy) => {
                return Err(CliError::Config(
                    "curve and bounds need --family toeplitz or fejer-riesz".into(),
                ))
            }
            (Command::Fuzzy, Family::Toeplitz | Family::FejerRiesz) => {
                return Err(CliError::Config("the fuzzy command needs --family fuzzy".into()))
            }
            _ => {}
        }
        let n_max = args.n_max.unwrap_or(args.n);
        if args.n < 1 {
            return Err(CliError::Config("--n must be at least 1".into()));
        }
        if n_max < args.n {
            return Err(CliError::Config("--n-max must be at least --n".into()));
        }
        if args.x_steps < 2 {
            return Err(CliError::Config("--x-steps must be at least 2".into()));
        }
        if args.tol.is_nan() || args.tol <= 0.0 {
            return Err(CliError::Config("--tol must be positive".into()));
        }
        Ok(RunConfig {
            family,
            n_min: args.n,
            n_max,
            x_steps: args.x_steps,
            tol: args.tol,
            samples: args.samples,
            seed: args.seed,
            threads: args.threads.unwrap_or(0),
            out: args.out.clone(),
            format: args.format,
        })
    }

    pub fn sizes(&self) -> impl Iterator<Item = usize> {
        self.n_min..=self.n_max
    }
}
