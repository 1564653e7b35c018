use thiserror::Error;

/// Errors raised by the analyses in this crate.
///
/// The variants map onto the process exit codes used by the command-line
/// front end: input and resource problems are the caller's fault, an
/// internal-consistency failure means two independent decision routes
/// disagreed and is always a bug.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("ambient mismatch: {left} points vs {right} points")]
    AmbientMismatch { left: usize, right: usize },

    #[error("matrix dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("size guard exceeded: {what} = {size} exceeds the bound {bound}")]
    Resource { what: String, size: u128, bound: u128 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("map is not monotone: {lower} <= {upper} but their images are not ordered")]
    NotMonotone { lower: String, upper: String },

    #[error("{0} requires the partition engine")]
    UnsupportedEngine(String),

    #[error("internal consistency violation: {0}")]
    InternalConsistency(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::InternalConsistency(msg.into())
    }

    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InternalConsistency(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
