use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {dim} out of range (valid: {min}..={max})")]
    DimensionOutOfRange { dim: usize, min: usize, max: usize },

    #[error("unknown cell `{cell}` in dimension {dim}")]
    UnknownCell { dim: usize, cell: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),

    #[error("invalid simplicial complex: {0}")]
    InvalidSimplicial(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("complex is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("invalid spanning tree: {0}")]
    InvalidTree(String),

    #[error("invalid permutation assignment: {0}")]
    InvalidAssignment(String),

    #[error("inconsistent assignment on 2-simplex {simplex}")]
    InconsistentAssignment { simplex: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("empty comparable range: {0}")]
    EmptyComparableRange(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// True for errors raised because loaded data broke a structural invariant
    /// (as opposed to malformed syntax or a bad request).
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::InvalidComplex(_)
                | Error::InvalidSimplicial(_)
                | Error::InvalidPresentation(_)
                | Error::InconsistentAssignment { .. }
                | Error::InvalidAssignment(_)
                | Error::UnknownCell { .. }
                | Error::UnknownGenerator(_)
        )
    }
}
