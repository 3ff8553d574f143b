//! Numerical logarithmic Borel and Laplace transforms with error bounds.

mod error;
mod function;
pub mod quadrature;
mod transforms;

pub use error::TransformError;
pub use function::{Eval, Evaluator, Flatness, GrowthBound, LogFunction};
pub use quadrature::{QuadOptions, Sample};
pub use transforms::{
    borel_function, borel_sup_bound, default_contour, log_borel, log_borel_lambda, log_laplace, log_laplace_lambda,
    Contour, QuadratureResult, TransformOptions,
};
