use series_core::SeriesError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TransformError {
    #[error("contour leaves the function's domain: {0}")]
    ContourOutsideDomain(String),
    #[error("point {0} is outside the image sector of the contour")]
    OutsideImage(String),
    #[error("nonconvergent quadrature: {0}")]
    NonConvergent(String),
    #[error("missing growth certificate: {0}")]
    MissingGrowth(String),
    #[error("truncation bound {bound:e} exceeds tolerance {tol:e}")]
    TruncationTooLarge { bound: f64, tol: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
