//! Library side of the `eofkit` command-line front end: state-file and
//! config parsing, report assembly, and the named demos. The binary in
//! `main.rs` is a thin argument-parsing wrapper over [`commands`].

pub mod commands;
pub mod config;
pub mod demos;
pub mod report;
pub mod statefile;

/// Failures mapped onto the process exit codes: input 2, config 3,
/// unknown demo 4, anything unexpected 1.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Config(String),
    UnknownDemo(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Config(_) => 3,
            CliError::UnknownDemo(_) => 4,
            CliError::Internal(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "invalid input: {msg}"),
            CliError::Config(msg) => write!(f, "invalid config: {msg}"),
            CliError::UnknownDemo(name) => write!(f, "unknown demo: {name}"),
            CliError::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
