use log_geometry::SummabilityParams;
use series_core::{ln_gamma, MERGE_TOL};

use crate::error::ResumError;

/// C(σ) = max_{α≥0} σ^α/Γ(α), by golden-section search on the concave α log σ − log Γ(α).
pub fn binet_constant(sigma: f64) -> f64 {
    assert!(sigma > 0.0, "σ must be positive");
    let phi = |a: f64| a * sigma.ln() - ln_gamma(a);
    // The maximiser solves ψ(α) = log σ and lies below max(2, σ + 2).
    let (mut lo, mut hi) = (1e-12, (sigma + 2.0).max(2.0));
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (phi(x1), phi(x2));
    for _ in 0..200 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = phi(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = phi(x1);
        }
        if hi - lo < 1e-15 * hi {
            break;
        }
    }
    f1.max(f2).exp()
}

/// Largest R' with (R')^{1/λ} ≤ R^{1/λ}/e · log(r/r').
pub fn max_borel_radius(radius: f64, lambda: f64, r: f64, r_new: f64) -> f64 {
    let inner = radius.powf(1.0 / lambda) / std::f64::consts::E * (r / r_new).ln();
    if inner <= 0.0 {
        0.0
    } else {
        inner.powf(lambda)
    }
}

/// τ' = (K', R', r', θ, Δ) with K' = {k − λ : k ∈ K, k > λ}, or {0} if that is empty.
pub fn borel_param_update(tau: &SummabilityParams, lambda: f64, r_new: f64, radius_new: f64) -> Result<SummabilityParams, ResumError> {
    if tau.m() != 1 {
        return Err(ResumError::InvalidArgument("the Borel parameter update is one-variable".into()));
    }
    if !(lambda > 0.0) {
        return Err(ResumError::InvalidArgument(format!("λ = {lambda} must be positive")));
    }
    if tau.mu_k() < lambda - MERGE_TOL {
        return Err(ResumError::InvalidArgument(format!("μ_K = {} is below λ = {lambda}", tau.mu_k())));
    }
    let max_radius = max_borel_radius(tau.radius[0], lambda, tau.r, r_new);
    if !(r_new > 1.0 && r_new < tau.r) {
        return Err(ResumError::Constraint { msg: format!("r' = {r_new} must lie in (1, {})", tau.r), max_radius });
    }
    if !(radius_new > 0.0 && radius_new <= max_radius) {
        return Err(ResumError::Constraint { msg: format!("R' = {radius_new} violates the radius constraint"), max_radius });
    }
    let mut k: Vec<Vec<f64>> = tau.k.iter().filter(|k| k[0] > lambda + MERGE_TOL).map(|k| vec![k[0] - lambda]).collect();
    if k.is_empty() {
        k.push(vec![0.0]);
    }
    let out = SummabilityParams { k, radius: vec![radius_new], r: r_new, ..tau.clone() };
    out.validate()?;
    Ok(out)
}
