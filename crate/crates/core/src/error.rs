use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("dimension {0} outside 1..={max}", max = crate::multiindex::MAX_DIM)]
    BadDimension(usize),
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("expected {expected} coordinates, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("multivector is not homogeneous")]
    NotHomogeneous,
    #[error("multivector is not simple")]
    NotSimple,
    #[error("blade has no vector factorization")]
    MissingFactorization,
    #[error("{0} must be nonzero")]
    ZeroInput(&'static str),
    #[error("{0} must have unit norm")]
    NotUnit(&'static str),
    #[error("map is not invertible")]
    Singular,
    #[error("vectors are linearly dependent")]
    DependentVectors,
    #[error("matrix must be square")]
    NotSquare,
    #[error("decomposition does not reproduce the multivector (residual {0:e})")]
    Reconstruction(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
