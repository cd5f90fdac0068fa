//! Command-line front end: argument parsing, file handling and JSON results.
//! `run_command` does all the work; the binary only prints and exits.

mod args;
mod commands;
mod json;

use std::ffi::OsString;

use abduce_core::Error;
use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

pub use args::Cli;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Usage,
    InvalidInput,
    PromiseViolation,
    BudgetExceeded,
    SelftestFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Usage => 1,
            Status::InvalidInput => 2,
            Status::PromiseViolation => 3,
            Status::BudgetExceeded => 4,
            Status::SelftestFailed => 5,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Usage => "usage",
            Status::InvalidInput => "invalid-input",
            Status::PromiseViolation => "promise-violation",
            Status::BudgetExceeded => "budget-exceeded",
            Status::SelftestFailed => "selftest-failed",
        }
    }

    pub fn of_error(e: &Error) -> Status {
        match e {
            Error::PromiseViolation(_) => Status::PromiseViolation,
            Error::BudgetExceeded { .. } => Status::BudgetExceeded,
            _ => Status::InvalidInput,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    /// The JSON document printed on standard output; `Null` for usage errors and help.
    pub payload: Value,
    /// Text for the terminal: help, usage errors, warnings.
    pub message: Option<String>,
}

impl CommandResult {
    fn ok(payload: Value) -> CommandResult {
        CommandResult { status: Status::Ok, payload, message: None }
    }

    fn error(e: &Error) -> CommandResult {
        let status = Status::of_error(e);
        let payload = json!({
            "status": status.as_str(),
            "error": { "kind": json::error_kind(e), "message": e.to_string() },
        });
        CommandResult { status, payload, message: Some(format!("error: {e}")) }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

/// Runs one command. `argv[0]` is the program name; `stdin` is read by file
/// arguments given as `-`.
pub fn run_command<I, T>(argv: I, stdin: Option<&str>) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let status = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Status::Ok,
                _ => Status::Usage,
            };
            return CommandResult { status, payload: Value::Null, message: Some(text) };
        }
    };
    let io = commands::Io { stdin, jobs: cli.jobs as usize };
    match commands::dispatch(&cli.command, &io) {
        Ok(r) => r,
        Err(e) => CommandResult::error(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_distinct() {
        let all = [
            Status::Ok,
            Status::Usage,
            Status::InvalidInput,
            Status::PromiseViolation,
            Status::BudgetExceeded,
            Status::SelftestFailed,
        ];
        let codes: std::collections::BTreeSet<i32> = all.iter().map(|s| s.exit_code()).collect();
        assert_eq!(codes.len(), all.len());
    }

    #[test]
    fn unknown_flag_is_a_usage_error() {
        let r = run_command(["abduce", "check", "--bogus"], None);
        assert_eq!(r.status, Status::Usage);
        assert_eq!(r.payload, Value::Null);
    }

    #[test]
    fn help_is_not_an_error() {
        assert_eq!(run_command(["abduce", "--help"], None).status, Status::Ok);
    }

    #[test]
    fn stdin_kb() {
        let kb = "DIALECT dllite-core\nTBOX\nA <= not(B)\nABOX\nA(a)\nB(a)\n";
        let r = run_command(["abduce", "check", "--kb", "-"], Some(kb));
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.payload["consistent"], json!(false));
    }
}
