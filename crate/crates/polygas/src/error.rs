use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    /// A moment state decoded to non-positive density or temperature.
    /// This usually signals loss of realizability (CFL or closure trouble)
    /// and is reported instead of being silently clamped.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// The relaxation tensor of the ES-BGK Gaussian is not positive
    /// definite; the flow is too anisotropic for the model.
    #[error("relaxation tensor not positive definite: {0}")]
    TensorNotSpd(String),

    /// A numerical routine failed to converge.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Invalid configuration.
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
