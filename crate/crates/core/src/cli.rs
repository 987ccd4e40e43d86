//! The `ringlab` command line.
//!
//! Exit status: 0 on success, 1 when a verification run finds a
//! counterexample, 2 on bad input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::Value as Json;

use crate::docs::{adequate_document, check_document, neat_document, verify_document, witness_document, ShiftKind};
use crate::harness::Bounds;
use crate::matred::snf_document;
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "ringlab", version, about = "Stable-range checks, certified witnesses and matrix reduction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide a ring property and print its report.
    Check {
        /// Ring spec, e.g. `Z/6`, `M2(Z/2)`, `Z`.
        ring: String,
        #[arg(long)]
        property: String,
    },
    /// Canonical diagonal form of a matrix document.
    Snf {
        #[arg(long)]
        input: PathBuf,
        /// Re-check the certificate and record the result.
        #[arg(long)]
        certify: bool,
    },
    /// Shift witnesses over `Z` or `F<p>[x]`.
    #[command(allow_negative_numbers = true)]
    Witness {
        kind: ShiftKind,
        a: String,
        b: String,
        c: String,
        #[arg(long, default_value = "Z")]
        ring: String,
    },
    /// Split `a = r s` with `r` coprime to `b` and the primes of `s` dividing `b`.
    #[command(allow_negative_numbers = true)]
    Adequate {
        a: String,
        b: String,
        #[arg(long, default_value = "Z")]
        ring: String,
    },
    /// Whether `R/aR` is clean.
    #[command(allow_negative_numbers = true)]
    Neat {
        a: String,
        #[arg(long, default_value = "Z")]
        ring: String,
    },
    /// Run verification suites and write a report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Catalog file; the built-in catalog when omitted.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Report destination; standard output when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn read_json(path: &PathBuf) -> Result<Json> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn write_doc(out: &mut dyn Write, doc: &Json) -> Result<()> {
    let text = serde_json::to_string_pretty(doc).expect("json");
    match writeln!(out, "{text}").and_then(|_| out.flush()) {
        // A closed pipe (`| head`) is not an error.
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::Config(format!("write failed: {e}"))),
        _ => Ok(()),
    }
}

/// Runs the command and returns its exit status.
fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let bounds = Bounds::from_env()?;
    let doc = match cli.command {
        Command::Check { ring, property } => check_document(&ring, &property, &bounds)?,
        Command::Snf { input, certify } => snf_document(&read_json(&input)?, certify)?,
        Command::Witness { kind, a, b, c, ring } => witness_document(&ring, kind, &a, &b, &c)?,
        Command::Adequate { a, b, ring } => adequate_document(&ring, &a, &b)?,
        Command::Neat { a, ring } => neat_document(&ring, &a)?,
        Command::Verify { suite, catalog, report } => {
            let (doc, failed) = verify_document(&suite, catalog.as_deref(), &bounds)?;
            match report {
                Some(path) => {
                    let text = serde_json::to_string_pretty(&doc).expect("json");
                    std::fs::write(&path, text + "\n")
                        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
                    write_doc(out, &doc["summary"])?;
                }
                None => write_doc(out, &doc)?,
            }
            return Ok(if failed { 1 } else { 0 });
        }
    };
    write_doc(out, &doc)?;
    Ok(0)
}

/// Parses `argv` (including the program name), runs the command and
/// returns the exit status. Errors go to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here too, with status 0.
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
