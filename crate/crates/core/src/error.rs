use thiserror::Error;

use crate::field::FieldError;

/// Errors raised by geometric constructions.
///
/// Witness values (residuals, determinants, offending points) are carried
/// in their exact text form so the error type stays backend-independent.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("homogeneous triple (0 : 0 : 0) does not name a point or line")]
    ZeroTriple,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("points are not collinear (determinant {det})")]
    NotCollinear { det: String },
    #[error("point {point} is not on line {line} (residual {residual})")]
    NotOnLine {
        point: String,
        line: String,
        residual: String,
    },
    #[error("point {point} is not on the conic (residual {residual})")]
    NotOnConic { point: String, residual: String },
    #[error("degenerate conic (determinant {det})")]
    DegenerateConic { det: String },
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
