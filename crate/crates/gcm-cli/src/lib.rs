//! Library backing the `gcm` binary: configuration parsing, figure presets,
//! the five subcommands, and the invariant check suite.

pub mod checks;
pub mod cmd;
pub mod config;
pub mod csvio;
pub mod manifest;
pub mod presets;
pub mod svg;

use std::fmt;

/// Command-level failures, carrying their process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad invocation or config contents (exit 2).
    Config(String),
    /// A covariance failed the physicality checks (exit 3).
    Unphysical(String),
    /// Filesystem trouble (exit 1).
    Io(String),
    /// The check suite reported failures (exit 1).
    ChecksFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Unphysical(_) => 3,
            CliError::Io(_) | CliError::ChecksFailed(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Unphysical(msg) => write!(f, "unphysical covariance: {msg}"),
            CliError::Io(msg) => write!(f, "io error: {msg}"),
            CliError::ChecksFailed(n) => write!(f, "{n} invariant check(s) failed"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<gcm_core::Error> for CliError {
    fn from(e: gcm_core::Error) -> Self {
        match e {
            gcm_core::Error::UnphysicalEigenvalue(_) => CliError::Unphysical(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
