use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

/// What went wrong on a model-file line.
#[derive(Debug, Clone, PartialEq)]
pub enum ParseReason {
    Syntax(String),
    UnknownLabel(String),
    BadMass(String),
    /// Rejected by the library's own validation.
    Model(filterfn::Error),
}

impl fmt::Display for ParseReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseReason::Syntax(s) => f.write_str(s),
            ParseReason::UnknownLabel(l) => write!(f, "unknown label `{l}`"),
            ParseReason::BadMass(t) => write!(f, "`{t}` is not a number"),
            ParseReason::Model(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: ParseReason },
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Runtime(#[from] filterfn::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn syntax(line: usize, reason: impl Into<String>) -> Self {
        CliError::Parse {
            line,
            reason: ParseReason::Syntax(reason.into()),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for bad input or configuration, 3 for failures while running.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Config(_) => 2,
            CliError::Runtime(_) | CliError::Io { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
