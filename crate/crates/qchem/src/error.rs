use std::fmt;

/// A malformed input line.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl fmt::Display) -> Self {
        Self {
            line,
            message: message.to_string(),
        }
    }
}

/// Everything the command line can fail with.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qchem_core::Error),
    #[error("parse error in {source_name}: {error}")]
    Parse {
        source_name: String,
        error: ParseError,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {error}")]
    Io { path: String, error: std::io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// Process exit status: 3 for resource caps, 1 for I/O failures, 2 for
    /// every validation error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(qchem_core::Error::Resource { .. }) => 3,
            CliError::Io { .. } => 1,
            _ => 2,
        }
    }

    pub fn io(path: impl AsRef<std::path::Path>, error: std::io::Error) -> Self {
        CliError::Io {
            path: path.as_ref().display().to_string(),
            error,
        }
    }

    pub fn parse(source_name: impl fmt::Display, error: ParseError) -> Self {
        CliError::Parse {
            source_name: source_name.to_string(),
            error,
        }
    }
}
