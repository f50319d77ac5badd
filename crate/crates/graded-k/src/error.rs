//! Error type shared by every module of the crate.

use thiserror::Error;

/// All failure modes surfaced by the library.
///
/// `Parse` carries a 1-based line number so front ends can point at the
/// offending input line. `Hypothesis` marks inputs outside the stated
/// hypotheses of a closed-form result; `NoClosedForm` marks inputs for which
/// no supported closed form exists at all.
#[derive(Debug, Error)]
pub enum KError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("hypothesis violation: {0}")]
    Hypothesis(String),
    #[error("no closed form: {0}")]
    NoClosedForm(String),
}

impl KError {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        KError::Parse { line, msg: msg.into() }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        KError::Invalid(msg.into())
    }
}
