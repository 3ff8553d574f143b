use log_geometry::GeometryError;
use series_core::SeriesError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SubstError {
    #[error("arity mismatch: substitution expects ({m}, {n}), series has ({got_m}, {got_n})")]
    Arity { m: usize, n: usize, got_m: usize, got_n: usize },
    #[error("substitution is not of normal form: {0}")]
    NonNormal(String),
    #[error("inadmissible substitution: {0}")]
    Inadmissible(String),
    #[error("jet cannot be computed with finite work: {0}")]
    InfiniteWork(String),
    #[error("series is not regular of order {d} in the last convergent variable; F(0, 0, Y) = {jet}")]
    NotRegular { d: u32, jet: String },
    #[error("no admissible parameter choice: {0}")]
    NoAdmissibleChoice(String),
    #[error("sample point outside the domain: {0}")]
    OutsideDomain(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
