use log_geometry::LogRegion;
use series_core::{ln_gamma, Complex64, LogCoord, MERGE_TOL};

use crate::decomposition::TougeronDecomposition;
use crate::error::ResumError;

/// Fit for one β: q = log|remainder| − log Γ(βM_K) − β Re w over the resolved grid points.
#[derive(Clone, Debug, PartialEq)]
pub struct GevreyRow {
    pub beta: f64,
    pub max_q: f64,
    /// Grid points where the remainder is well above its evaluation error.
    pub resolved: usize,
    /// Slope of q against Re w over the left half of the resolved real points.
    pub slope: Option<f64>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GevreyReport {
    pub d: f64,
    pub e: f64,
    pub rows: Vec<GevreyRow>,
    pub holds: bool,
    pub failing: Vec<f64>,
}

/// Slope below which q is taken to grow without bound as Re w → −∞.
const GROWTH_SLOPE: f64 = -0.5;

fn slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 3 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx)
}

/// Checks |f(w) − Σ_{α<β} a_α e^{αw}| ≤ D E^β Γ(βM_K) |e^{βw}| on the grid and fits D, E.
///
/// The stored pieces are used as an exact decomposition of their own sum. Points where the
/// remainder is within 100 times its rounding and quadrature error are skipped.
pub fn gevrey_check(
    d: &TougeronDecomposition,
    subsector: &LogRegion,
    betas: &[f64],
    grid: &[Complex64],
) -> Result<GevreyReport, ResumError> {
    let s_tau = d.tau.s_tau();
    for w in grid {
        if !subsector.contains_complex(*w) || !s_tau.contains_complex(*w) {
            return Err(ResumError::InvalidArgument(format!("grid point {w} is outside the subsector")));
        }
    }
    let m = d.tau.m_k();
    let t = d.assemble_t()?.series;
    let coeffs: Vec<(f64, Complex64)> = t.terms().map(|(k, c)| (k.values()[0], *c)).collect();
    let vals: Vec<_> = grid.iter().map(|w| d.eval_pieces(LogCoord::Finite(*w))).collect();

    let mut rows = Vec::with_capacity(betas.len());
    for &beta in betas {
        if !(beta > 0.0) {
            return Err(ResumError::InvalidArgument(format!("β = {beta} must be positive")));
        }
        let lg = ln_gamma(beta * m);
        let mut qs: Vec<(f64, f64, bool)> = Vec::new();
        for (w, f) in grid.iter().zip(&vals) {
            let mut partial = Complex64::new(0.0, 0.0);
            let mut mass = 0.0;
            for (a, c) in &coeffs {
                if *a < beta - MERGE_TOL {
                    let term = c * (w * a).exp();
                    partial += term;
                    mass += term.norm();
                }
            }
            let rem = (f.value - partial).norm();
            let noise = f.err + 8.0 * f64::EPSILON * (f.value.norm() + mass);
            if rem > 100.0 * noise {
                qs.push((w.re, rem.ln() - lg - beta * w.re, w.im == 0.0));
            }
        }
        let max_q = qs.iter().map(|q| q.1).fold(f64::NEG_INFINITY, f64::max);
        let mut real: Vec<(f64, f64)> = qs.iter().filter(|q| q.2).map(|q| (q.0, q.1)).collect();
        real.sort_by(|a, b| a.0.total_cmp(&b.0));
        let left = &real[..real.len().div_ceil(2)];
        let sl = slope(left);
        let ok = !qs.is_empty() && max_q.is_finite() && sl.is_none_or(|s| s >= GROWTH_SLOPE);
        rows.push(GevreyRow { beta, max_q, resolved: qs.len(), slope: sl, ok });
    }

    let pts: Vec<(f64, f64)> = rows.iter().filter(|r| r.resolved > 0).map(|r| (r.beta, r.max_q)).collect();
    let (mut ln_d, mut ln_e) = (f64::INFINITY, 0.0);
    if !pts.is_empty() {
        ln_e = if pts.len() >= 2 { slope_any(&pts) } else { 0.0 };
        ln_d = pts.iter().map(|(b, q)| q - ln_e * b).fold(f64::NEG_INFINITY, f64::max);
    }
    let failing: Vec<f64> = rows.iter().filter(|r| !r.ok).map(|r| r.beta).collect();
    Ok(GevreyReport { d: ln_d.exp(), e: ln_e.exp(), holds: failing.is_empty() && ln_d.is_finite(), rows, failing })
}

fn slope_any(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx
    }
}
