//! Command-line front end for `dini-core`.
//!
//! Everything goes through [`run`], which takes the argument list and two
//! writers and returns the process exit code. The binary is a thin wrapper,
//! so tests drive the exact same code path in-process.
//!
//! Exit codes: 0 success, 1 selftest failure, 2 invalid input, 3 numeric
//! failure.

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod output;
pub mod selftest;

pub use output::{Envelope, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SELFTEST: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "dini",
    version,
    about = "Zeros, criterion sums and starlikeness certificates for normalized Dini functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Positive zeros of D(x) = (a-ν)J_ν(x) + xJ'_ν(x) with their brackets.
    Zeros {
        #[command(flatten)]
        family: FamilyArgs,
        /// Number of zeros (1 to 18).
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Bracket width for each zero.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Criterion sum Σ 1/(ω_n² - 1): closed form plus truncated sum and tail bound.
    Sum {
        #[command(flatten)]
        family: FamilyArgs,
        /// Terms in the truncated sum (0 to 18).
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Order ν_a at which the criterion sum equals 1.
    Critical {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        /// Bracket width of the root.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Lower end of the scanned order range.
        #[arg(long, default_value_t = -0.74, allow_negative_numbers = true)]
        lo: f64,
        /// Upper end of the scanned order range.
        #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
        hi: f64,
        /// Scan step.
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Verdict on starlikeness and close-to-convexity of all derivatives.
    Certify {
        #[command(flatten)]
        family: FamilyArgs,
        /// Zeros used for the corroborating truncated sum.
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// w(z) and w'(z) at one point of the closed unit disk.
    Eval {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_negative_numbers = true)]
        re: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        im: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// w on the unit circle and Re(zw'/w) on the circle of radius 0.99.
    Boundary {
        #[command(flatten)]
        family: FamilyArgs,
        /// Number of equally spaced angles 2πj/M.
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the built-in acceptance checks.
    Selftest {
        /// Machine-readable report.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct FamilyArgs {
    /// Parameter a > 0 (a = 2 gives q_ν, a = 1 gives r_ν).
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    /// Order ν > -1.
    #[arg(long, allow_negative_numbers = true)]
    pub nu: f64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    /// Write the data to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(dini_core::Error),
    /// Writing to `--out` failed.
    Output(PathBuf, io::Error),
    Io(io::Error),
    Json(serde_json::Error),
    Csv(csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_validation() => EXIT_VALIDATION,
            CliError::Output(..) => EXIT_VALIDATION,
            _ => EXIT_NUMERIC,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Output(path, e) => write!(f, "cannot write {}: {e}", path.display()),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Json(e) => write!(f, "json error: {e}"),
            CliError::Csv(e) => write!(f, "csv error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<dini_core::Error> for CliError {
    fn from(e: dini_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Csv(e)
    }
}

/// Parse `args` (including the program name) and execute the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_VALIDATION
                }
            };
        }
    };

    if let Command::Selftest { json } = cli.command {
        return selftest::run_selftest(json, stdout, stderr);
    }

    match commands::execute(&cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
