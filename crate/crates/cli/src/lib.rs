//! Command-line front end for the pension system simulator.
//!
//! ```text
//! pensim simulate    -f scenario.json [--format csv|md]
//! pensim table       -f scenario.json --which 1|2|3
//! pensim equivalence -f scenario.json
//! pensim metrics     -f scenario.json --which ror|primary-balance|ndc|alpha|free-lunch|inconsistency
//! ```
//!
//! Exit codes: 0 success, 1 invalid input, 2 verification failure.

pub mod commands;
pub mod ledger_csv;
pub mod render;
pub mod scenario;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFICATION_FAILED: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "pensim",
    version,
    about = "Simulate and compare PAYG and funded pension systems"
)]
pub struct Cli {
    /// Print exact p/q values instead of rounded decimals in Markdown output.
    #[arg(long, global = true)]
    pub exact: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Per-step ledger of the scenario's system.
    Simulate {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = LedgerFormat::Md)]
        format: LedgerFormat,
    },
    /// Symbolic and numeric comparison tables.
    Table {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
    },
    /// Check every P <-> CB transition time against the pure systems.
    Equivalence {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
    /// Sustainability metric reports.
    Metrics {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        #[arg(long, value_enum)]
        which: MetricKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LedgerFormat {
    Csv,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricKind {
    Ror,
    PrimaryBalance,
    Ndc,
    Alpha,
    FreeLunch,
    Inconsistency,
}

/// Parses `args` (program name first) and runs the command. Data goes to
/// `out`, diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match commands::execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_INVALID
        }
    }
}
