//! Exact rational linear algebra.

pub mod elim;
pub mod float;
pub mod matrix;
pub mod modular;
pub mod scalar;
pub mod subspace;
pub mod vector;

pub use matrix::Matrix;
pub use scalar::Scalar;
pub use subspace::Subspace;
pub use vector::SparseVec;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("cannot parse rational `{0}`")]
    Parse(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("matrix is singular")]
    Singular,
    #[error("vector is not in the span")]
    NotInSpan,
}
