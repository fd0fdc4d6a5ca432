//! Command implementations for the `steerscope` binary.
//!
//! The binary itself only parses arguments and maps errors to exit codes;
//! everything observable (report files, CSV/JSON tables, human tables) is
//! built here so integration tests can exercise it directly.

pub mod commands;
pub mod presets;
pub mod report;
pub mod tables;

use steerscope::error::Error;

/// Exit codes: 0 success, 2 input validation, 3 numerical escalation.
pub fn exit_code_for(error: &CliError) -> i32 {
    match error {
        CliError::Lib(Error::PrecisionExceeded { .. }) => 3,
        _ => 2,
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Input rejected before reaching the library (bad preset, bad file,
    /// malformed JSON, invalid ranges).
    Input(String),
    Lib(Error),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "invalid input: {msg}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;
