use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A value that should satisfy an invariant (normalization, positivity) does not.
    #[error("integrity error: {0}")]
    Integrity(String),

    /// The operation is undefined at this point.
    #[error("singular point at tau = {tau}: {reason}")]
    Singular { tau: f64, reason: String },

    /// The operation only covers a sub-case of the model.
    #[error("unsupported case: {0}")]
    Unsupported(String),

    /// The requested problem exceeds the dense-solver budget.
    #[error("resource limit: {0}")]
    Resource(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
