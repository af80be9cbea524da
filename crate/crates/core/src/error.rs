use thiserror::Error;

/// Errors shared across the whole crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("conductor must be a positive integer")]
    ZeroConductor,

    #[error("division by zero in the scalar field")]
    DivisionByZero,

    #[error("scalar is not real: {0}")]
    NotReal(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("generator {index} is not orthogonal (or has a non-real entry)")]
    NonOrthogonalGenerator { index: usize },

    #[error("closure cap {cap} exceeded")]
    CapExceeded { cap: usize },

    #[error("subspace is not invariant: {0}")]
    NotInvariant(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("{0} is not a face of the complex")]
    NotAFace(String),

    #[error("not a subcomplex: {0}")]
    NotASubcomplex(String),

    #[error("invalid simplicial action: {0}")]
    InvalidAction(String),

    #[error("complex is not connected")]
    Disconnected,

    #[error("unknown family: {0}")]
    UnknownFamily(String),

    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the CLI: 2 parse, 3 cap/bound, 4 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::ZeroConductor
            | Error::UnknownFamily(_)
            | Error::InvalidParameter(_)
            | Error::EmptyInput(_) => 2,
            Error::CapExceeded { .. } => 3,
            Error::Internal(_) => 4,
            _ => 2,
        }
    }
}
