use thiserror::Error;

/// Errors produced by graph construction, partition validation, and the
/// numerical pipelines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamilyParams(String),

    #[error("coupling strength must be nonnegative, got {0}")]
    NegativeCoupling(f64),

    #[error("matrix is not positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error("numerical breakdown: {0}")]
    Numerical(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("partition enumeration refused: {0}")]
    EnumerationLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
