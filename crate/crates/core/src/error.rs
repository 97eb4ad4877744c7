use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("check failed: {0}")]
    Check(String),
}
