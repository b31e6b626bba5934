use thiserror::Error;

/// Broad failure classes, used by front ends to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Domain,
    Certification,
    Cap,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid temperature: {0}")]
    InvalidBeta(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("semiring mode mismatch")]
    ModeMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not positive semidefinite (smallest eigenvalue {0:e})")]
    NotPositiveSemidefinite(f64),
    #[error("singular input: {0}")]
    Singular(String),
    #[error("arity mismatch: tree has {leaves} leaves but {inputs} inputs were given")]
    ArityMismatch { leaves: usize, inputs: usize },
    #[error("not a subgraph: {0}")]
    NotSubgraph(String),
    #[error("missing cost for label {0}")]
    MissingLabel(String),
    #[error("undefined component: {0}")]
    UndefinedComponent(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
    #[error("certification failed: {0}")]
    Certification(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse(_) => ErrorKind::Parse,
            Error::CapExceeded(_) => ErrorKind::Cap,
            Error::Certification(_) => ErrorKind::Certification,
            _ => ErrorKind::Domain,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
