//! Regions of the logarithmic chart and the summability parameters τ that
//! generate them.
//!
//! Coordinates are w = log z; the origin z = 0 is the point −∞, with the
//! conventions Re(−∞) = −∞, Im(−∞) = 0 and 0·(−∞) = 0.

mod params;
mod region;
mod sampling;

pub use params::{Convention, GeometryError, SummabilityParams};
pub use region::LogRegion;
pub use sampling::{containment_check, containment_check_with_rho, sample_point, ContainmentReport, ContainmentStage};
pub use series_core::{LogCoord, LogPoint};
