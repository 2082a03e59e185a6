//! Command-line front end: the `w(n,k)` table, sequence export, bijection
//! demos, and the full cross-validation run.
//!
//! Data goes to the output stream and diagnostics to the error stream. Exit
//! codes: 0 success, 1 verification failure, 2 usage error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use watercells::bijections::BijectionError;
use watercells::watertable::{Method, TableError};

pub mod render;
pub mod sequences;
pub mod verify;

pub use verify::{verify, verify_with, Check, VerificationReport};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Bijection(#[from] BijectionError),
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "watercells",
    version,
    about = "Water cells in compositions with parts 1 and 2"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the triangle w(n,k) for 0 <= n <= max-n.
    Table {
        #[arg(long, default_value_t = 14)]
        max_n: usize,
        #[arg(long, default_value = "bruteforce")]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run every cross-check and print a report; exits 1 if any check fails.
    Verify {
        #[arg(long, default_value_t = 16)]
        max_n: usize,
    },
    /// Print the first `count` terms of a sequence.
    Sequence {
        /// One of w-column:K, diagonal, row-sums, riordan-row-sums,
        /// riordan-diag-sums, cie, increasable, w0-complement.
        name: String,
        count: usize,
        /// Prefix each term with its index.
        #[arg(long)]
        b_file: bool,
    },
    /// Print every element of a bijection's domain with its image.
    Bijection {
        #[arg(value_enum)]
        name: BijectionName,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BijectionName {
    /// W(n,0) and 2W(n-3,0), the zero-water linear recurrence.
    Thm1d,
    /// W(n,1) <-> W(n-2,1) u (W(n-3,0) minus the all-ones composition).
    Wc1,
    /// W(n,k) <-> W(n-1,k-1) u W(n-2,k) for k >= 2.
    Wck,
    /// Colored partitions <-> W(n,k).
    ColoredPartition,
    /// Diagonal D(n) <-> C_ie(n).
    DiagonalCie,
    /// Copies of C(ceil(n/2)) <-> C_ie(n).
    CiePowerof2,
}

/// Parses `args` (including the program name), runs the command, and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> u8
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
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Runs an already-parsed command.
pub fn execute(command: &Command, out: &mut impl Write) -> Result<u8, CliError> {
    match command {
        Command::Table {
            max_n,
            method,
            format,
        } => {
            let table = watercells::watertable::build_table(*max_n, *method);
            let text = match format {
                Format::Text => render::table_text(&table),
                Format::Csv => table.to_csv(),
                Format::Json => table.to_json() + "\n",
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Verify { max_n } => {
            let report = verify(*max_n);
            out.write_all(report.render().as_bytes())?;
            Ok(if report.overall() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
        Command::Sequence {
            name,
            count,
            b_file,
        } => {
            let seq = sequences::sequence(name, *count)?;
            out.write_all(seq.render(*b_file).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Bijection { name, n, k } => {
            let text = render::bijection_text(*name, *n, *k)?;
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}
