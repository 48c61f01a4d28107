use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("dimension limit exceeded: {0} entries (cap {1})")]
    DimensionLimit(usize, usize),

    #[error("enumeration limit exceeded: n = {0} (cap {1})")]
    EnumerationLimit(usize, usize),

    #[error("matrix not Hermitian: max asymmetry {0:.3e} exceeds tolerance {1:.3e}")]
    NotHermitian(f64, f64),

    #[error("matrix not unitary: residual {0:.3e}")]
    NotUnitary(f64),

    #[error("invalid density operator: {0}")]
    InvalidState(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("singular scaling: trace against the symmetric subspace is {0:.3e}")]
    SingularScaling(f64),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
