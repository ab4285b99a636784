//! Library surface of the `hardy` command-line tool.
//!
//! Each subcommand is a pure function from options to rendered output,
//! so the integration and acceptance tests drive the exact text the
//! binary prints. Exit codes are a stable contract for scripts:
//!
//! - `0` — success, including a demonstrated contradiction,
//! - `1` — ran fine but no contradiction at the requested setting,
//! - `2` — usage, parse, or parameter errors,
//! - `3` — internal pipeline errors.

pub mod commands;
pub mod report;

/// Rendered output plus the process exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct CmdOutput {
    pub stdout: String,
    pub exit_code: i32,
}

impl CmdOutput {
    fn success(stdout: String) -> CmdOutput {
        CmdOutput {
            stdout,
            exit_code: 0,
        }
    }
}

/// A failure with its exit code; the message goes to stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub exit_code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError {
            exit_code: 2,
            message: message.into(),
        }
    }

    pub fn pipeline(message: impl Into<String>) -> CliError {
        CliError {
            exit_code: 3,
            message: message.into(),
        }
    }
}
