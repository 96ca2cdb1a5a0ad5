use std::fmt;

use thiserror::Error;

use crate::classify::ClassId;

/// A diagnostic from one of the text formats. `line` is 1-based; 0 means the
/// error is not tied to a particular line (e.g. a bare literal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn at(mut self, line: usize) -> Self {
        if self.line == 0 {
            self.line = line;
        }
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("law does not satisfy the Jordan identity")]
    NotJordan,
    #[error("law is not associative")]
    NotAssociative,
    #[error("unsupported dimension {0}")]
    UnsupportedDim(usize),
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("no characteristic basis found: {0}")]
    NoCharBasis(String),
    #[error("generic characteristic sequence {generic:?} does not dominate sample {sample:?}")]
    GenericNotDominant {
        generic: Vec<usize>,
        sample: Vec<usize>,
    },
    #[error("limit diverges at structure constant ({i},{j})->{k}")]
    Diverges { i: usize, j: usize, k: usize },
    #[error("limit classifies as {actual}, expected {expected}")]
    Misclassified { expected: ClassId, actual: ClassId },
    #[error("deformation is not Jordan: coefficient of t^{degree} fails")]
    NotJordanFamily { degree: usize },
    #[error("no witness among {budget} candidates")]
    NotFound { budget: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
