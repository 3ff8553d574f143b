//! The Euler series Σ (−1)ⁿ n! X^{n+1} and its sum ∫₀^∞ e^{−t} x/(1+xt) dt.

use std::f64::consts::{E, PI};

use log_geometry::{LogRegion, SummabilityParams};
use series_core::{Complex64, GenSeries, LogCoord, SupportDescriptor, SupportKind, TailBound};
use transforms_numeric::quadrature::{integrate, QuadOptions, Sample};
use transforms_numeric::{Eval, LogFunction};

use crate::decomposition::{NormTail, Piece, TougeronDecomposition};
use crate::error::ResumError;

const EULER_R: f64 = 0.5;
const EULER_SMALL_R: f64 = 2.0;
const EULER_THETA: f64 = 0.75 * PI;

fn tight() -> QuadOptions {
    QuadOptions { rel_tol: 1e-14, abs_tol: 1e-300, ..QuadOptions::default() }
}

/// ∫_a^b e^{−t} x/(1+xt) dt for complex x off the negative axis.
fn euler_segment(x: Complex64, a: f64, b: f64) -> Eval {
    let one = Complex64::new(1.0, 0.0);
    match integrate(|t| Sample::exact((-t).exp() * x / (one + x * t)), a, b, &tight()) {
        Ok(q) => Eval { value: q.value, err: q.err + 4.0 * f64::EPSILON * q.value.norm() },
        Err(_) => Eval { value: Complex64::new(f64::NAN, f64::NAN), err: f64::INFINITY },
    }
}

/// ∫₀^∞ e^{−t} x/(1+xt) dt for x > 0, by adaptive quadrature.
pub fn euler_integral(x: f64) -> f64 {
    let x = Complex64::new(x, 0.0);
    // The integrand is below e^{−t} beyond t = 60.
    (0..60).map(|p| euler_segment(x, p as f64, p as f64 + 1.0).value.re).sum::<f64>()
        + euler_segment(x, 60.0, 120.0).value.re
}

/// τ = ({1}, 1/2, 2, 3π/4, ℕ) with Δ cut off at `terms`.
pub fn euler_params(terms: usize) -> Result<SummabilityParams, ResumError> {
    let delta = SupportDescriptor::new(SupportKind::Arith { step: 1.0 }, terms as f64)?;
    Ok(SummabilityParams::one_var(vec![1.0], EULER_R, EULER_SMALL_R, EULER_THETA, delta)?)
}

/// f_p(w) = ∫_p^{p+1} e^{−t} x/(1+xt) dt with F_p its Taylor series at x = 0, p < `pieces`.
///
/// On S^τ_p we have |1+xt| ≥ sin θ in the sector part and |xt| ≤ 1/2 in the disk part, which
/// gives the sup bounds; on |x| ≤ ρ_p the series is dominated by Σ (1/2)ⁿ.
pub fn euler_decomposition(pieces: usize, terms: usize) -> Result<TougeronDecomposition, ResumError> {
    let tau = euler_params(terms)?;
    let one_minus = 1.0 - 1.0 / E;
    let sector = EULER_R / EULER_THETA.sin();
    let mut out = Vec::with_capacity(pieces);
    for p in 0..pieces {
        let pf = p as f64;
        let rho = tau.rho_p(p as u64)[0];
        let mut coeffs = Vec::with_capacity(terms);
        for n in 0..terms {
            let q = integrate(
                |s| Sample::exact(Complex64::new((-s).exp() * (pf + s).powi(n as i32), 0.0)),
                0.0,
                1.0,
                &tight(),
            )?;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            coeffs.push((vec![(n + 1) as f64], Complex64::new(sign * (-pf).exp() * q.value.re, 0.0)));
        }
        let support = SupportDescriptor::new(SupportKind::Arith { step: 1.0 }, terms as f64)?;
        let tail = 2.0 * rho * 0.5f64.powi(terms as i32) * one_minus * (-pf).exp();
        let series = GenSeries::from_terms(1, coeffs, Some(vec![support]))?.with_tail(Some(TailBound::new(vec![rho], tail)));
        let func = LogFunction::new(LogRegion::Sector { d: 0.0, r: f64::INFINITY, theta: PI }, move |w: LogCoord| match w {
            LogCoord::NegInf => Eval::exact(Complex64::new(0.0, 0.0)),
            LogCoord::Finite(z) => euler_segment(z.exp(), pf, pf + 1.0),
        });
        let sup_norm = sector.max(1.0 / (pf + 1.0)) * one_minus * (-pf).exp();
        out.push(Piece { series, func, sup_norm });
    }
    let q = EULER_SMALL_R / E;
    let big_p = pieces as f64;
    let geom = q.powf(big_p) / (1.0 - q);
    let tail = NormTail {
        series: one_minus * geom / (big_p + 1.0),
        functions: sector.max(1.0 / (big_p + 1.0)) * one_minus * geom,
    };
    TougeronDecomposition::new(tau, out, tail)
}

/// Σ_{n<terms} (−1)ⁿ n! X^{n+1}.
pub fn euler_series(terms: usize) -> GenSeries {
    let mut fact = 1.0;
    let mut v = Vec::with_capacity(terms);
    for n in 0..terms {
        if n > 0 {
            fact *= n as f64;
        }
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        v.push((vec![(n + 1) as f64], Complex64::new(sign * fact, 0.0)));
    }
    let support = SupportDescriptor { kind: SupportKind::Arith { step: 1.0 }, cutoff: terms as f64 };
    GenSeries::from_terms(1, v, Some(vec![support])).expect("valid exponents").with_tail(None)
}
