//! Command-line front end: `eval`, `sweep` and `verify`.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error, 3 verification
//! failure, 4 I/O error.

mod eval;
mod sweep;
mod verify;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use eval::{Evaluation, Function};
pub use sweep::{Scale, SweepRow, SweepSpec};
pub use verify::{run_suite, Metric, Suite, VerifyReport};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "relvoigt", version, about = "Classical and relativistic Voigt profiles")]
pub struct Cli {
    /// Emit JSON instead of text/CSV.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Override the tolerance of every `verify` check.
    #[arg(long, global = true, value_name = "FLOAT")]
    pub tolerance: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function at one point.
    Eval(EvalArgs),
    /// Evaluate a function along a grid in one parameter.
    Sweep(SweepArgs),
    /// Run the consistency checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub function: Function,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args, Default)]
pub struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub u: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub u1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub u2: Option<f64>,
    /// Energy.
    #[arg(long = "e", visible_alias = "energy", allow_negative_numbers = true)]
    pub e: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: Option<f64>,
}

impl ParamArgs {
    fn pairs(&self) -> Vec<(&'static str, f64)> {
        [
            ("a", self.a),
            ("u", self.u),
            ("u1", self.u1),
            ("u2", self.u2),
            ("e", self.e),
            ("mu", self.mu),
            ("gamma", self.gamma),
            ("sigma", self.sigma),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(value_enum)]
    pub function: Function,
    /// Parameter varied along the grid.
    #[arg(long)]
    pub axis: String,
    #[arg(long, allow_negative_numbers = true)]
    pub start: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub stop: f64,
    #[arg(long)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = Scale::Linear)]
    pub scale: Scale,
    /// Fixed parameter as NAME=VALUE; repeat for each parameter.
    #[arg(long, value_name = "NAME=VALUE")]
    pub fixed: Vec<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
}

/// Failure of a CLI command, mapped to an exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(Error),
    Verification(usize),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
            CliError::Verification(_) => EXIT_VERIFY,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(e) => write!(f, "{} error: {e}", e.name()),
            CliError::Verification(n) => write!(f, "{n} check(s) failed"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Parse `args` (including the program name), run the command and return
/// the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "relvoigt: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    if let Some(t) = cli.tolerance {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Usage("--tolerance must be finite and > 0".into()));
        }
    }
    let mut buffer = Vec::new();
    let outcome = match &cli.command {
        Command::Eval(args) => eval::cmd_eval(args, cli.json, &mut buffer),
        Command::Sweep(args) => sweep::cmd_sweep(args, cli.json, &mut buffer),
        Command::Verify(args) => verify::cmd_verify(args.suite, cli.tolerance, cli.json, &mut buffer),
    };
    // verification failures still produce a report worth writing
    match &outcome {
        Ok(()) | Err(CliError::Verification(_)) => emit(cli.output.as_ref(), &buffer, stdout)?,
        Err(_) => {}
    }
    outcome
}

fn emit(path: Option<&PathBuf>, bytes: &[u8], stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => File::create(p)?.write_all(bytes)?,
        None => stdout.write_all(bytes)?,
    }
    Ok(())
}
