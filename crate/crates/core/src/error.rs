use thiserror::Error;

use crate::kb::Dialect;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PromiseKind {
    /// Repair semantics were requested but the KB is consistent.
    KbConsistent,
    /// Classical semantics were requested but the KB is inconsistent.
    KbInconsistent,
    /// The observation already follows from the KB under the chosen semantics.
    ObservationEntailed,
}

impl PromiseKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PromiseKind::KbConsistent => "kb-consistent",
            PromiseKind::KbInconsistent => "kb-inconsistent",
            PromiseKind::ObservationEntailed => "observation-entailed",
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("axiom `{axiom}` is not allowed in dialect {dialect}")]
    DialectViolation { axiom: String, dialect: Dialect },
    #[error("promise violated: {}", .0.as_str())]
    PromiseViolation(PromiseKind),
    #[error("budget exceeded: more than {limit} {what}")]
    BudgetExceeded { what: &'static str, limit: u64 },
    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid source: {0}")]
    InvalidSource(String),
}

impl Error {
    pub fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
        Error::Syntax { line, column, message: message.into() }
    }

    pub fn budget(what: &'static str, limit: u64) -> Error {
        Error::BudgetExceeded { what, limit }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
