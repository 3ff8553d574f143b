//! Generalized power series with natural support.
//!
//! A [`GenSeries`] is a jet: every term whose exponent lies below the
//! per-variable cutoff is stored exactly, and an optional [`TailBound`]
//! controls what was dropped. [`MixedSeries`] adds convergent variables
//! with integer exponents.

pub mod error;
pub mod exponent;
pub mod gamma;
pub mod gps;
pub mod logpoint;
pub mod mixed;
pub mod series;
pub mod support;

pub use error::SeriesError;
pub use exponent::{ExpTag, ExponentKey, MultiIndex, MERGE_TOL};
pub use gamma::{gamma, ln_gamma, rgamma};
pub use gps::{parse_gps, write_gps, GpsDocument, GrowthLine};
pub use logpoint::{LogCoord, LogPoint};
pub use mixed::{MixedKey, MixedSeries};
pub use num_complex::Complex64;
pub use series::{GenSeries, LogSum, Norm, TailBound};
pub use support::{SupportDescriptor, SupportKind};
