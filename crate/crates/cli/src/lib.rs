//! Command-line front end for stasurf: surface analysis, mesh sampling,
//! shared-value audits and the example gallery.

pub mod analyze;
pub mod gallery;
pub mod parse;
pub mod sample;
pub mod share;

use std::fmt;

use stasurf::error::Error;
use stasurf::verdict::Verdict;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// A failure carrying its process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        Self { code: EXIT_PARSE, message: message.into() }
    }

    pub fn numeric(message: impl Into<String>) -> Self {
        Self { code: EXIT_NUMERIC, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) | Error::TargetInEf(_) => CliError::parse(e.to_string()),
            _ => CliError::numeric(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// `0` when every verdict is acceptable, `1` otherwise.
pub fn exit_code_for<'a>(verdicts: impl IntoIterator<Item = &'a Verdict>) -> i32 {
    if verdicts.into_iter().all(|v| v.is_ok()) {
        EXIT_OK
    } else {
        EXIT_VERDICT
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
