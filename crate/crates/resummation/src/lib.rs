//! Tougeron decompositions, their norms and Gevrey estimates, Borel parameter
//! bookkeeping, and summation of divergent series in the positive real direction.

mod decomposition;
mod error;
mod gevrey;
pub mod models;
mod multisum;
mod params;
mod probe;

pub use decomposition::{AssembledT, NormTail, Piece, TougeronDecomposition};
pub use error::ResumError;
pub use gevrey::{gevrey_check, GevreyReport, GevreyRow};
pub use log_geometry::SummabilityParams;
pub use multisum::{estimate_radius, levels, multisum, MultisumOptions, MultisumResult, RadiusEstimate, Route};
pub use params::{binet_constant, borel_param_update, max_borel_radius};
pub use probe::{quasianalyticity_probe, ProbeReport};
