use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("presentation has an infinite cokernel (free rank {0})")]
    InfiniteCokernel(usize),

    #[error("brute-force budget exceeded: {0}")]
    Budget(String),

    #[error("element is not in the group: {0}")]
    NotInGroup(String),

    #[error("operation not defined on opaque group symbols: {0}")]
    OpaqueArithmetic(String),

    #[error("monomial {0} is not admissible")]
    Inadmissible(String),

    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),

    #[error("degree {degree} exceeds the algebra's degree cap {cap}")]
    CapExceeded { degree: u32, cap: u32 },

    #[error("inconsistent module data: {0}")]
    DataConsistency(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("unspecified map: {0}")]
    UnspecifiedMap(String),

    #[error("invalid declaration: {0}")]
    InvalidDeclaration(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::UnknownName(_) => 2,
            Error::Inconclusive(_) => 4,
            Error::Io(_) => 1,
            _ => 3,
        }
    }
}
