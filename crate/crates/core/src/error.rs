use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A special function was evaluated outside its domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// An argument violates a documented precondition.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// The domain description is malformed or degenerate.
    #[error("geometry error: {0}")]
    Geometry(String),
    /// An iterative method failed to converge or bracket.
    #[error("numeric failure: {0}")]
    Numeric(String),
    /// The requested combination is not supported.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// The Theorem-1 construction does not apply to this operator.
    #[error("route error: {0}")]
    Route(String),
    /// A radius lies outside the admissible range of a profile.
    #[error("range error: {0}")]
    Range(String),
    /// A barrier profile could not be constructed.
    #[error("construction error: {0}")]
    Construction(String),
    /// The operator is undefined where the gradient vanishes.
    #[error("singular point: {0}")]
    SingularPoint(String),
    /// A computed report violated one of its own invariants.
    #[error("internal consistency: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
