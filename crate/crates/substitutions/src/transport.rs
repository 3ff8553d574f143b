use std::f64::consts::FRAC_PI_2;

use log_geometry::{Convention, SummabilityParams};
use series_core::{SupportDescriptor, SupportKind};

use crate::error::SubstError;
use crate::kind::{after_removal, SubstKind, Substitution};

/// Choices left open by the substitution itself.
#[derive(Clone, Debug, PartialEq)]
pub struct TransportChoice {
    /// Radius ρ₀ of the new convergent variable of a regular blow-up.
    pub rho0: f64,
    /// Exponent l in R'_j = min{R_j, R_i, R_i/(λ + 2ρ₀)^l}.
    pub l: f64,
    /// Parameters of the new X' variables of an infinitesimal substitution.
    pub new_x: Option<SummabilityParams>,
}

impl Default for TransportChoice {
    fn default() -> Self {
        TransportChoice { rho0: 0.1, l: 1.0, new_x: None }
    }
}

fn remove<T: Clone>(v: &[T], i: usize) -> Vec<T> {
    let mut out = v.to_vec();
    out.remove(i);
    out
}

fn merge_delta(a: &SupportDescriptor, b: &SupportDescriptor) -> SupportDescriptor {
    a.sum_closure(b)
}

fn finish(tau: &SummabilityParams, k: Vec<Vec<f64>>, radius: Vec<f64>, theta: f64, delta: Vec<SupportDescriptor>) -> Result<SummabilityParams, SubstError> {
    if radius.is_empty() {
        return Err(SubstError::NoAdmissibleChoice("no Gevrey variable is left".into()));
    }
    let mut k = k;
    k.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    k.dedup();
    let convention = if radius.len() == 1 { Convention::OneVariable } else { tau.convention.clone() };
    let out = SummabilityParams { k, radius, r: tau.r, theta, delta, convention };
    out.validate()?;
    Ok(out)
}

impl Substitution {
    /// (τ', ρ') for the target variables.
    pub fn param_transport(
        &self,
        tau: &SummabilityParams,
        rho: &[f64],
        choice: &TransportChoice,
    ) -> Result<(SummabilityParams, Vec<f64>), SubstError> {
        if tau.m() != self.m || rho.len() != self.n {
            return Err(SubstError::Arity { m: self.m, n: self.n, got_m: tau.m(), got_n: rho.len() });
        }
        let r = &tau.radius;
        match &self.kind {
            SubstKind::Permutation { perm } => {
                let place = |v: &[f64]| {
                    let mut out = vec![0.0; v.len()];
                    for (i, &p) in perm.iter().enumerate() {
                        out[p] = v[i];
                    }
                    out
                };
                let mut delta = tau.delta.clone();
                for (i, &p) in perm.iter().enumerate() {
                    delta[p] = tau.delta[i].clone();
                }
                let k = tau.k.iter().map(|k| place(k)).collect();
                Ok((finish(tau, k, place(r), tau.theta, delta)?, rho.to_vec()))
            }
            SubstKind::Ramification { i, alpha } => {
                let k = tau.k.iter().map(|k| {
                    let mut k = k.clone();
                    k[*i] /= alpha;
                    k
                });
                let mut radius = r.clone();
                radius[*i] = r[*i].powf(1.0 / alpha);
                let mut delta = tau.delta.clone();
                let d = &tau.delta[*i];
                delta[*i] = SupportDescriptor {
                    kind: SupportKind::Scaled { base: Box::new(d.kind.clone()), factor: *alpha },
                    cutoff: d.cutoff * alpha,
                };
                Ok((finish(tau, k.collect(), radius, tau.theta, delta)?, rho.to_vec()))
            }
            SubstKind::RegularBlowUp { i, j, lambda } => {
                let (rho0, l) = (choice.rho0, choice.l);
                if !(rho0 > 0.0 && 2.0 * rho0 < *lambda) {
                    return Err(SubstError::NoAdmissibleChoice(format!("need 0 < 2ρ₀ < λ, got ρ₀ = {rho0}, λ = {lambda}")));
                }
                // k_i |arg(λ + v)| < θ − θ' for |v| ≤ 2ρ₀.
                let arg = (2.0 * rho0 / lambda).asin();
                let ki = tau.k.iter().map(|k| k[*i]).fold(0.0, f64::max);
                let top = tau.theta - ki * arg;
                if !(top > FRAC_PI_2) {
                    return Err(SubstError::NoAdmissibleChoice(format!(
                        "k_i·|arg(λ + v)| = {} leaves no θ' in (π/2, θ = {})",
                        ki * arg,
                        tau.theta
                    )));
                }
                let theta = 0.5 * (FRAC_PI_2 + top);
                let jn = after_removal(*j, *i);
                let k = tau.k.iter().map(|k| {
                    let mut k2 = remove(k, *i);
                    k2[jn] = k[*j] + k[*i];
                    k2
                });
                let mut radius = remove(r, *i);
                radius[jn] = r[*j].min(r[*i]).min(r[*i] / (lambda + 2.0 * rho0).powf(l));
                let mut delta = remove(&tau.delta, *i);
                delta[jn] = merge_delta(&tau.delta[*j], &tau.delta[*i]);
                let mut rho2 = rho.to_vec();
                rho2.push(rho0);
                Ok((finish(tau, k.collect(), radius, theta, delta)?, rho2))
            }
            SubstKind::SingularBlowUp { i, j } => {
                let k = tau.k.iter().map(|k| {
                    let mut k2 = k.clone();
                    k2[*j] = k[*j] + k[*i];
                    k2
                });
                let mut radius = r.clone();
                radius[*i] = r[*i] / r[*j];
                let mut delta = tau.delta.clone();
                delta[*j] = merge_delta(&tau.delta[*j], &tau.delta[*i]);
                Ok((finish(tau, k.collect(), radius, tau.theta, delta)?, rho.to_vec()))
            }
            SubstKind::Translation { a, b, .. } => {
                let keep: Vec<usize> = (0..self.m).filter(|&i| a[i] == 0.0).collect();
                let k = tau.k.iter().map(|k| keep.iter().map(|&i| k[i]).collect());
                let radius = keep.iter().map(|&i| r[i]).collect();
                let delta = keep.iter().map(|&i| tau.delta[i].clone()).collect();
                let mut rho2: Vec<f64> = rho.iter().zip(b).map(|(p, b)| p - b.norm()).collect();
                for (i, ai) in a.iter().enumerate() {
                    if *ai != 0.0 {
                        if !(*ai < r[i]) {
                            return Err(SubstError::Inadmissible(format!("a_{i} = {ai} is not below R_{i} = {}", r[i])));
                        }
                        rho2.push(0.5 * ai.min(r[i] - ai));
                    }
                }
                Ok((finish(tau, k.collect(), radius, tau.theta, delta)?, rho2))
            }
            SubstKind::Infinitesimal { targets, source_rho, target_radius, target_rho } => {
                let (mt, nt) = self.target();
                // ‖σ(Y_j)‖ at (R', 2^{n'+1}ρ') must stay below ρ_j/2.
                let wide: Vec<f64> = target_rho.iter().map(|p| p * 2f64.powi(nt as i32 + 1)).collect();
                for (j, t) in targets.iter().enumerate() {
                    let norm = t.stored_norm(target_radius, &wide);
                    if !(norm <= source_rho[j] / 2.0) {
                        return Err(SubstError::NoAdmissibleChoice(format!(
                            "‖σ(Y_{j})‖ at 2^(n'+1)ρ' is {norm}, above ρ_{j}/2 = {}",
                            source_rho[j] / 2.0
                        )));
                    }
                }
                let extra = mt - self.m;
                let (mut k, mut radius, mut delta) = (Vec::new(), r.clone(), tau.delta.clone());
                for kk in &tau.k {
                    let mut v = kk.clone();
                    v.extend(std::iter::repeat_n(0.0, extra));
                    k.push(v);
                }
                if extra > 0 {
                    let nx = choice.new_x.as_ref().ok_or_else(|| {
                        SubstError::NoAdmissibleChoice("parameters for the new X' variables are required".into())
                    })?;
                    if nx.m() != extra {
                        return Err(SubstError::NoAdmissibleChoice(format!("expected τ' for {extra} variables")));
                    }
                    for kk in &nx.k {
                        let mut v = vec![0.0; self.m];
                        v.extend(kk);
                        k.push(v);
                    }
                    radius.extend(nx.radius.iter().copied());
                    delta.extend(nx.delta.iter().cloned());
                }
                for (o, t) in radius.iter_mut().zip(target_radius) {
                    *o = o.min(*t);
                }
                let mut tau2 = finish(tau, k, radius, tau.theta, delta)?;
                tau2.convention = if mt == 1 { Convention::OneVariable } else { Convention::Polydomain };
                Ok((tau2, target_rho.clone()))
            }
            SubstKind::Identify { i, j } => {
                let jn = after_removal(*j, *i);
                let k = tau.k.iter().map(|k| {
                    let mut k2 = remove(k, *i);
                    k2[jn] = k[*j] + k[*i];
                    k2
                });
                let mut radius = remove(r, *i);
                radius[jn] = r[*i].min(r[*j]);
                let mut delta = remove(&tau.delta, *i);
                delta[jn] = merge_delta(&tau.delta[*j], &tau.delta[*i]);
                Ok((finish(tau, k.collect(), radius, tau.theta, delta)?, rho.to_vec()))
            }
            SubstKind::SetZero { i } => {
                let k = tau.k.iter().map(|k| remove(k, *i)).collect();
                Ok((finish(tau, k, remove(r, *i), tau.theta, remove(&tau.delta, *i))?, rho.to_vec()))
            }
        }
    }
}
