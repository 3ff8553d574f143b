use series_core::{Complex64, LogCoord};

use crate::decomposition::TougeronDecomposition;
use crate::error::ResumError;

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    /// max_α |T(d₁)_α − T(d₂)_α| over the stored exponents.
    pub t_difference: f64,
    pub max_discrepancy: f64,
    pub argmax: Option<Complex64>,
    pub same_t: bool,
}

/// Compares Σ_p f_p for two decompositions on a grid, alongside the difference of their T.
pub fn quasianalyticity_probe(
    d1: &TougeronDecomposition,
    d2: &TougeronDecomposition,
    grid: &[Complex64],
    t_tol: f64,
) -> Result<ProbeReport, ResumError> {
    let t = d1.assemble_t()?.series.sub(&d2.assemble_t()?.series)?;
    let t_difference = t.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max);
    let mut max_discrepancy = 0.0;
    let mut argmax = None;
    for w in grid {
        let (a, b) = (d1.eval_pieces(LogCoord::Finite(*w)), d2.eval_pieces(LogCoord::Finite(*w)));
        let d = (a.value - b.value).norm();
        if d > max_discrepancy || argmax.is_none() {
            max_discrepancy = d;
            argmax = Some(*w);
        }
    }
    Ok(ProbeReport { t_difference, max_discrepancy, argmax, same_t: t_difference <= t_tol })
}
