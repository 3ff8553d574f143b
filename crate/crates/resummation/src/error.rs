use log_geometry::GeometryError;
use series_core::SeriesError;
use thiserror::Error;
use transforms_numeric::TransformError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ResumError {
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("uncertified quantity: {0}")]
    Uncertified(String),
    #[error("parameter constraint violated: {msg} (largest admissible R' is {max_radius})")]
    Constraint { msg: String, max_radius: f64 },
    #[error("point is not admissible: error bound {bound:e} exceeds tolerance {tol:e}")]
    Inadmissible { bound: f64, tol: f64 },
    #[error("radius estimation failed: {0}")]
    RadiusEstimation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}
