//! The `mvw` command line.
//!
//! [`run`] parses arguments, executes one command and writes its report.
//! Exit codes: 0 success or the property holds, 1 the property is violated,
//! 2 usage or input error, 3 a budget was exhausted.

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::Parser;
use mvw_core::Error;
use serde_json::{json, Value};

mod args;
mod commands;

pub use args::Cli;
use args::{Format, Global};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Result of a command that ran to completion.
pub(crate) struct Outcome {
    pub holds: bool,
    pub report: Value,
    pub text: String,
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let (code, report, text) = match commands::execute(&cli) {
        Ok(out) => {
            let code = if out.holds { EXIT_OK } else { EXIT_VIOLATED };
            (code, out.report, out.text)
        }
        Err(e) => {
            eprintln!("mvw: {e}");
            let code = exit_code(&e);
            let report = json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } });
            (code, report, format!("error: {e}\n"))
        }
    };
    match emit(&cli.global, &report, &text) {
        Ok(()) => code,
        Err(msg) => {
            eprintln!("mvw: {msg}");
            EXIT_USAGE
        }
    }
}

fn emit(global: &Global, report: &Value, text: &str) -> Result<(), String> {
    let body = match global.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| e.to_string())?;
            s.push('\n');
            s
        }
        Format::Text => text.to_string(),
    };
    match &global.output {
        Some(path) => {
            fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(|e| e.to_string())
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_budget() {
        return EXIT_BUDGET;
    }
    match e {
        Error::AlignmentOrderMismatch { .. }
        | Error::MarkerTransferFailed { .. }
        | Error::AlignmentCheckFailed { .. }
        | Error::ChainStepMismatch { .. } => EXIT_VIOLATED,
        _ => EXIT_USAGE,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::AssociativityViolation { .. } => "associativity-violation",
        Error::IdentityViolation { .. } => "identity-violation",
        Error::RangeError(_) => "range-error",
        Error::SizeBudgetExceeded { .. } => "size-budget-exceeded",
        Error::CapExceeded { .. } => "cap-exceeded",
        Error::AssignmentBudgetExceeded { .. } => "assignment-budget-exceeded",
        Error::ParseError { .. } => "parse-error",
        Error::UnboundVariable(_) => "unbound-variable",
        Error::LetterAbsent(_) => "letter-absent",
        Error::InvalidAlphabet(_) => "invalid-alphabet",
        Error::ClassBudgetExceeded { .. } => "class-budget-exceeded",
        Error::GenerationBudgetExceeded { .. } => "generation-budget-exceeded",
        Error::PreconditionFailed(_) => "precondition-failed",
        Error::AlignmentOrderMismatch { .. } => "alignment-order-mismatch",
        Error::MarkerTransferFailed { .. } => "marker-transfer-failed",
        Error::AlignmentCheckFailed { .. } => "alignment-check-failed",
        Error::ChainStepMismatch { .. } => "chain-step-mismatch",
        Error::FormatError(_) => "format-error",
    }
}
