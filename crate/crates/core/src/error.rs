use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An exactness assertion failed inside the engine. Seeing this means a bug.
    #[error("internal error: {0}")]
    Internal(String),

    #[error("oracle bound exceeded: order {order} > bound {bound}")]
    BoundExceeded { order: usize, bound: usize },

    #[error("no certificate found after {attempted} candidate points")]
    SearchFailure { attempted: usize },

    #[error("certificate check failed: {0}")]
    CertificateFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
