use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use series_core::{LogCoord, LogPoint};

use crate::params::SummabilityParams;
use crate::region::LogRegion;

/// Which inclusion of the chain H(log ρ_p) ⊆ H^{μ_K}_p ⊆ ∩ Hᵏ_p ⊆ S^τ_p failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContainmentStage {
    RhoDiskInMuPolydisk,
    MuPolydiskInKPolydisks,
    KPolydisksInSector,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContainmentReport {
    pub holds: bool,
    pub samples: usize,
    pub witness: Option<(LogPoint, ContainmentStage)>,
}

/// Random point near the relevant boundaries: Re w_i = log R_i − U(0, span_i),
/// Im w_i ∈ (−2θ, 2θ), occasionally −∞.
pub fn sample_point(tau: &SummabilityParams, p: u64, rng: &mut impl Rng) -> LogPoint {
    let lr = tau.log_radius();
    let mu = tau.mu_vec();
    let lp = (1.0 + p as f64).ln();
    LogPoint(
        lr.iter()
            .zip(&mu)
            .map(|(l, m)| {
                if rng.gen_bool(0.05) {
                    return LogCoord::NegInf;
                }
                let scale = if *m > 0.0 { (1.0 / m).min(50.0) } else { 50.0 };
                let span = (scale + 1.0) * lp + 2.0;
                let u = l - rng.gen_range(0.0..span) + rng.gen_range(-0.05..0.05);
                let v = rng.gen_range(-2.0 * tau.theta..2.0 * tau.theta);
                LogCoord::new(u, v)
            })
            .collect(),
    )
}

fn check_chain(first: &LogRegion, tau: &SummabilityParams, p: u64, samples: usize, seed: u64) -> ContainmentReport {
    let chain = [
        (first.clone(), ContainmentStage::RhoDiskInMuPolydisk),
        (tau.mu_polydisk(p), ContainmentStage::MuPolydiskInKPolydisks),
        (tau.k_polydisks(p), ContainmentStage::KPolydisksInSector),
        (tau.s_tau_p(p), ContainmentStage::KPolydisksInSector),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let w = sample_point(tau, p, &mut rng);
        for pair in chain.windows(2) {
            if pair[0].0.contains(&w) && !pair[1].0.contains(&w) {
                return ContainmentReport { holds: false, samples, witness: Some((w, pair[0].1)) };
            }
        }
    }
    ContainmentReport { holds: true, samples, witness: None }
}

/// Samples the containment chain for τ and p.
pub fn containment_check(tau: &SummabilityParams, p: u64, samples: usize, seed: u64) -> ContainmentReport {
    check_chain(&tau.rho_disk(p), tau, p, samples, seed)
}

/// Same as [`containment_check`] with the first disk built from a caller-supplied ρ.
pub fn containment_check_with_rho(
    tau: &SummabilityParams,
    p: u64,
    rho: &[f64],
    samples: usize,
    seed: u64,
) -> ContainmentReport {
    let first = LogRegion::Disk { r: rho.iter().map(|x| x.ln()).collect() };
    check_chain(&first, tau, p, samples, seed)
}
