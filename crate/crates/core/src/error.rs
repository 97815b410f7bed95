use thiserror::Error;

/// Broad class of a failure, used by the command line to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Resource,
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("generator {index} is not homogeneous: components in degrees {degrees}")]
    NonHomogeneous { index: usize, degrees: String },

    #[error("Gröbner computation exceeded its budget of {0} S-polynomial reductions")]
    BudgetExceeded(usize),

    #[error("field size {q} is not admissible: {reason}")]
    InadmissibleFieldSize { q: u64, reason: String },

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("not a product of Euler classes: {0}")]
    NotEulerClass(String),

    #[error("denominator {0} is not an Euler class of a representation without fixed vectors")]
    DenominatorNotInEc(String),

    #[error("window too small to certify: {0}")]
    WindowNotCertified(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::BudgetExceeded(_) => ErrorKind::Resource,
            Error::Invariant(_) => ErrorKind::Internal,
            _ => ErrorKind::Input,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
