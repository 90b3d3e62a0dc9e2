use crate::ring::Mode;
use thiserror::Error;

/// Unified error type for every fallible operation in the crate.
///
/// Exit-code mapping for the CLI and FFI layers: [`Error::exit_code`]
/// returns 3 for cap violations and 2 for everything else; identity
/// failures are not errors (they are FAIL verdicts in reports).
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("mode mismatch: {left} vs {right}")]
    ModeMismatch { left: Mode, right: Mode },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("cap exceeded: {what} is {actual}, limit {limit}")]
    CapExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("graph is not acyclic")]
    NotAcyclic,

    #[error("SINGULAR: coefficient matrix has determinant zero")]
    Singular,

    #[error("no value assigned to variable `{0}`")]
    MissingVariable(String),

    #[error("variable name `x` is reserved for the characteristic polynomial")]
    ReservedVariable,

    #[error("division requires rational mode")]
    SymbolicDivision,

    #[error("vertex index {index} out of range for {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 3,
            _ => 2,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
