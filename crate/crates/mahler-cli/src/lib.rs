//! Library side of the `mahler` command-line frontend: expression parsing,
//! exact evaluation, job dispatch, and structured output documents.
//!
//! Completed runs exit 0 regardless of the mathematical verdict; errors carry
//! stable machine-readable codes (`CliError::code`).

use std::fmt;

pub mod document;
pub mod eval;
pub mod jobs;
pub mod parser;

pub use document::{Doc, OutputFormat};
pub use jobs::{run_job, JobSpec};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CliError {
    Syntax(parser::SyntaxError),
    Eval(eval::EvalError),
    Math(mahler::error::MahlerError),
    Io(String),
    BadArgs(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Syntax(_) => "E_SYNTAX",
            CliError::Eval(e) => e.code(),
            CliError::Math(e) => e.code(),
            CliError::Io(_) => "E_IO",
            CliError::BadArgs(_) => "E_BAD_ARGS",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Syntax(e) => write!(f, "{e}"),
            CliError::Eval(e) => write!(f, "{e}"),
            CliError::Math(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "{m}"),
            CliError::BadArgs(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<mahler::error::MahlerError> for CliError {
    fn from(e: mahler::error::MahlerError) -> Self {
        CliError::Math(e)
    }
}

impl From<parser::SyntaxError> for CliError {
    fn from(e: parser::SyntaxError) -> Self {
        CliError::Syntax(e)
    }
}

impl From<eval::EvalError> for CliError {
    fn from(e: eval::EvalError) -> Self {
        CliError::Eval(e)
    }
}
