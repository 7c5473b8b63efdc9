//! `biperiodic` command line: `term`, `table`, `verify`, `series`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or validation
//! error.

mod commands;
mod render;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "biperiodic", version, about = "Bi-periodic Fibonacci and Lucas numbers and matrices, exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print one term.
    Term(TermArgs),
    /// Print the terms n..=n-max.
    Table(TableArgs),
    /// Run the identity suite and print a JSON report.
    Verify(VerifyArgs),
    /// Expand the Lucas matrix generating function and compare with the recurrence.
    Series(SeriesArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    /// Coefficient used at even Fibonacci indices, as "p/q" or an integer.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub a: String,
    /// Coefficient used at odd Fibonacci indices, as "p/q" or an integer.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub b: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Fib,
    Lucas,
    FibMatrix,
    LucasMatrix,
}

impl Kind {
    fn is_matrix(self) -> bool {
        matches!(self, Kind::FibMatrix | Kind::LucasMatrix)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SourceArg {
    Rec,
    Closed,
    Binet,
    /// All three routes; the value is printed only if they agree.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Args, Debug)]
pub struct TermArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    #[arg(long, value_enum, default_value = "rec")]
    pub source: SourceArg,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub n: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub n_max: i64,
    #[arg(long, value_enum, default_value = "rec")]
    pub source: SourceArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Built-in grid (default, special, degenerate). Overrides --a/--b.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long, default_value_t = 10)]
    pub n_max: u64,
    /// Series coefficients to compare; defaults to n-max + 1.
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Add the generation time to the report.
    #[arg(long)]
    pub timestamps: bool,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, default_value_t = crate::series::DEFAULT_ORDER)]
    pub order: usize,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
}

/// `verify` exits 0 iff the report has no failures.
pub fn verify_exit_code(report: &crate::report::SuiteReport) -> i32 {
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match commands::dispatch(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}
