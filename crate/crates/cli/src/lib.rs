//! Library side of the `plap` binary: argument types, command dispatch and
//! report rendering. `main.rs` only parses arguments and writes bytes.

pub mod args;
mod commands;
pub mod output;
pub mod report;

use std::path::PathBuf;

pub use args::{Cli, Command, Common, What, Which};
pub use commands::execute;
pub use report::{Payload, RunReport, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_CAP: i32 = 4;
/// `verify` ran to completion and at least one check failed.
pub const EXIT_VERIFY_FAILED: i32 = 5;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {}: {source}", path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write output: {0}")]
    Write(String),
    #[error(transparent)]
    Core(#[from] plap_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use plap_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Write(_) => EXIT_USAGE,
            CliError::Read { .. } => EXIT_PARSE,
            CliError::Core(e) => match e {
                E::Parse { .. } | E::SelfLoop { .. } | E::VertexOutOfRange { .. } | E::EmptyGraph => EXIT_PARSE,
                E::InvalidP(_) | E::Contract(_) => EXIT_USAGE,
                E::OracleCap { .. } => EXIT_CAP,
                _ => EXIT_NUMERICAL,
            },
        }
    }
}

/// A finished command: the report and the exit status it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: RunReport,
    pub exit_code: i32,
}
