use std::f64::consts::FRAC_PI_2;

use series_core::{SupportDescriptor, MERGE_TOL};
use thiserror::Error;

use crate::region::LogRegion;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("invalid summability parameters: {0}")]
    InvalidParams(String),
}

/// How the entries of K are read.
///
/// `OneVariable`: k is a Gevrey order and ρ_p = R/(1+p)^{M_K}.
/// `Polydomain`: k is a weight vector and ρ_{p,i} = R_i/(1+p)^{1/μ_{K,i}}.
/// For m = 1 the two agree after replacing every nonzero k by 1/k.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    OneVariable,
    Polydomain,
}

/// τ = (K, R, r, θ, Δ).
#[derive(Clone, Debug, PartialEq)]
pub struct SummabilityParams {
    pub k: Vec<Vec<f64>>,
    pub radius: Vec<f64>,
    pub r: f64,
    pub theta: f64,
    pub delta: Vec<SupportDescriptor>,
    pub convention: Convention,
}

fn invalid(msg: impl Into<String>) -> GeometryError {
    GeometryError::InvalidParams(msg.into())
}

impl SummabilityParams {
    pub fn one_var(k: Vec<f64>, radius: f64, r: f64, theta: f64, delta: SupportDescriptor) -> Result<Self, GeometryError> {
        let p = SummabilityParams {
            k: k.into_iter().map(|x| vec![x]).collect(),
            radius: vec![radius],
            r,
            theta,
            delta: vec![delta],
            convention: Convention::OneVariable,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn poly(
        k: Vec<Vec<f64>>,
        radius: Vec<f64>,
        r: f64,
        theta: f64,
        delta: Vec<SupportDescriptor>,
    ) -> Result<Self, GeometryError> {
        let p = SummabilityParams { k, radius, r, theta, delta, convention: Convention::Polydomain };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        let m = self.radius.len();
        if m == 0 {
            return Err(invalid("R must have at least one coordinate"));
        }
        if self.convention == Convention::OneVariable && m != 1 {
            return Err(invalid("the one-variable convention needs m = 1"));
        }
        if self.k.is_empty() {
            return Err(invalid("K must be nonempty"));
        }
        for k in &self.k {
            if k.len() != m || k.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
                return Err(invalid(format!("K entry {k:?} must lie in [0,∞)^{m}")));
            }
        }
        if self.radius.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(invalid(format!("R = {:?} must be positive", self.radius)));
        }
        if !(self.r > 1.0 && self.r.is_finite()) {
            return Err(invalid(format!("r = {} must exceed 1", self.r)));
        }
        if !(self.theta > FRAC_PI_2 && self.theta.is_finite()) {
            return Err(invalid(format!("θ = {} must exceed π/2", self.theta)));
        }
        if self.delta.len() != m {
            return Err(invalid("Δ needs one descriptor per variable"));
        }
        for d in &self.delta {
            if !d.kind.is_natural() || !d.kind.is_sum_closed() {
                return Err(invalid(format!("Δ = {:?} must be natural and closed under addition", d.kind)));
            }
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.radius.len()
    }

    /// M_K = max K (one-variable reading).
    pub fn m_k(&self) -> f64 {
        self.k.iter().map(|k| k[0]).fold(f64::NEG_INFINITY, f64::max)
    }

    /// μ_K = min K (one-variable reading).
    pub fn mu_k(&self) -> f64 {
        self.k.iter().map(|k| k[0]).fold(f64::INFINITY, f64::min)
    }

    /// K in the polydomain reading.
    pub fn polydomain_k(&self) -> Vec<Vec<f64>> {
        match self.convention {
            Convention::Polydomain => self.k.clone(),
            Convention::OneVariable => {
                self.k.iter().map(|k| vec![if k[0] == 0.0 { 0.0 } else { 1.0 / k[0] }]).collect()
            }
        }
    }

    /// μ_{K,i} = min_k k_i in the polydomain reading.
    pub fn mu_vec(&self) -> Vec<f64> {
        let k = self.polydomain_k();
        (0..self.m()).map(|i| k.iter().map(|v| v[i]).fold(f64::INFINITY, f64::min)).collect()
    }

    pub fn log_radius(&self) -> Vec<f64> {
        self.radius.iter().map(|x| x.ln()).collect()
    }

    /// ρ^τ_p.
    pub fn rho_p(&self, p: u64) -> Vec<f64> {
        let base = 1.0 + p as f64;
        match self.convention {
            Convention::OneVariable => vec![self.radius[0] / base.powf(self.m_k())],
            Convention::Polydomain => self
                .radius
                .iter()
                .zip(self.mu_vec())
                .map(|(r, mu)| r / base.powf(1.0 / mu))
                .collect(),
        }
    }

    /// S^τ.
    pub fn s_tau(&self) -> LogRegion {
        let lr = self.log_radius();
        match self.convention {
            Convention::OneVariable => {
                let parts: Vec<LogRegion> = self
                    .k
                    .iter()
                    .filter(|k| k[0] != 0.0)
                    .map(|k| LogRegion::Sector { d: 0.0, r: lr[0], theta: self.theta * k[0] })
                    .collect();
                if parts.is_empty() {
                    LogRegion::Disk { r: lr }
                } else {
                    LogRegion::Intersect(parts)
                }
            }
            Convention::Polydomain => LogRegion::Intersect(
                self.k.iter().map(|k| LogRegion::PolySector { k: k.clone(), r: lr.clone(), theta: self.theta }).collect(),
            ),
        }
    }

    /// S^τ_p = ∩_k Sᵏ_p(log R, θ).
    pub fn s_tau_p(&self, p: u64) -> LogRegion {
        let lr = self.log_radius();
        LogRegion::Intersect(
            self.polydomain_k()
                .into_iter()
                .map(|k| LogRegion::PolySectorP { k, r: lr.clone(), theta: self.theta, p })
                .collect(),
        )
    }

    /// H(log ρ^τ_p).
    pub fn rho_disk(&self, p: u64) -> LogRegion {
        LogRegion::Disk { r: self.rho_p(p).iter().map(|x| x.ln()).collect() }
    }

    /// H^{μ_K}_p(log R).
    pub fn mu_polydisk(&self, p: u64) -> LogRegion {
        LogRegion::PolyDisk { k: self.mu_vec(), r: self.log_radius(), p }
    }

    /// ∩_k Hᵏ_p(log R).
    pub fn k_polydisks(&self, p: u64) -> LogRegion {
        let lr = self.log_radius();
        LogRegion::Intersect(self.polydomain_k().into_iter().map(|k| LogRegion::PolyDisk { k, r: lr.clone(), p }).collect())
    }

    fn k_contains(&self, k: &[f64]) -> bool {
        self.k.iter().any(|x| x.iter().zip(k).all(|(a, b)| (a - b).abs() <= MERGE_TOL))
    }

    /// τ ≤ τ' iff K ⊇ K', R ≤ R', r ≤ r', θ ≤ θ', Δ ⊇ Δ' (Δ' checked up to its cutoff).
    pub fn le(&self, other: &SummabilityParams) -> bool {
        if self.m() != other.m() || self.convention != other.convention {
            return false;
        }
        other.k.iter().all(|k| self.k_contains(k))
            && self.radius.iter().zip(&other.radius).all(|(a, b)| a <= b)
            && self.r <= other.r
            && self.theta <= other.theta
            && self.delta.iter().zip(&other.delta).all(|(a, b)| match b.enumerate() {
                Ok(vals) => vals.iter().all(|v| a.kind.contains(*v)),
                Err(_) => a.kind == b.kind,
            })
    }
}
