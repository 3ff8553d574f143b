//! Substitutions on jets of mixed series, their parameter transport and Weierstrass preparation.

pub mod apply;
pub mod cases;
pub mod combinatorics;
pub mod error;
pub mod kind;
pub mod numeric;
pub mod transport;
pub mod weierstrass;

pub use apply::{binom, binomial_series};
pub use error::SubstError;
pub use kind::{SubstKind, Substitution};
pub use numeric::{numeric_consistency, ConsistencyReport};
pub use transport::TransportChoice;
pub use weierstrass::weierstrass_prepare;

use log_geometry::SummabilityParams;

/// Free-function form of [`Substitution::param_transport`].
pub fn param_transport(
    sigma: &Substitution,
    tau: &SummabilityParams,
    rho: &[f64],
    choice: &TransportChoice,
) -> Result<(SummabilityParams, Vec<f64>), SubstError> {
    sigma.param_transport(tau, rho, choice)
}
