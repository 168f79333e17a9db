use thiserror::Error;

/// Errors raised by the polygon, spine and surjection operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssoError {
    #[error("malformed signature: {0}")]
    MalformedSignature(String),
    #[error("malformed diagonal: {0}")]
    MalformedDiagonal(String),
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),
    #[error("malformed ordered partition: {0}")]
    MalformedPartition(String),
    #[error("diagonal not in triangulation: {0}")]
    NotInTriangulation(String),
    #[error("not a dissection: {0}")]
    NotADissection(String),
    #[error("not a triangulation: {0}")]
    NotATriangulation(String),
    #[error("not an internal diagonal: {0}")]
    NotInternal(String),
    #[error("bottom boundary edge does not define a half-space: {0}")]
    BottomBoundary(String),
    #[error("malformed spine: {0}")]
    MalformedSpine(String),
    #[error("spine interface mismatch: {0}")]
    InterfaceMismatch(String),
    #[error("operation requires a triangulation spine")]
    NotTriangulationSpine,
}

pub type Result<T, E = AssoError> = std::result::Result<T, E>;
