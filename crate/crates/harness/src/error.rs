use std::path::PathBuf;

use fpure_core::AlgebraError;
use thiserror::Error;

/// A DSL diagnostic with a 1-based source location.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct DslError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
    /// The check behind the diagnostic ran out of computation budget.
    pub budget: bool,
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Dsl { path: String, source: DslError },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl HarnessError {
    /// Process exit code: 1 usage/parse, 2 budget exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Algebra(e) if e.is_budget() => 2,
            HarnessError::Dsl { source, .. } if source.budget => 2,
            _ => 1,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
