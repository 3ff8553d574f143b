use std::f64::consts::PI;

use log_geometry::LogRegion;
use series_core::{gamma, Complex64, GenSeries, LogCoord, LogPoint, SupportDescriptor, TailBound, MERGE_TOL};
use transforms_numeric::{log_laplace_lambda, Eval, Flatness, GrowthBound, LogFunction, TransformOptions};

use crate::error::ResumError;

#[derive(Clone, Debug)]
pub struct MultisumOptions {
    pub transform: TransformOptions,
    /// Largest acceptable total error bound.
    pub tol: f64,
    /// Safety factor applied to the estimated radius of the transformed series.
    pub margin: f64,
    /// Growth certificate (c, d): |h(η)| ≤ c·exp(d·e^{Re η/κ_l}) for the innermost Borel sum h.
    pub growth: Option<(f64, f64)>,
    /// Closed form of the innermost Borel sum, used in place of the series.
    pub inner: Option<LogFunction>,
}

impl Default for MultisumOptions {
    fn default() -> Self {
        MultisumOptions { transform: TransformOptions::default(), tol: 1e-2, margin: 0.9, growth: None, inner: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Tf converges: the log-sum is evaluated directly.
    Convergent,
    /// Borel chain followed by truncated Laplace integrals.
    BorelLaplace,
    /// Borel chain with a caller-provided innermost function.
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultisumResult {
    pub value: Complex64,
    /// Sum of the three contributions below.
    pub error_bound: f64,
    pub truncation: f64,
    pub quadrature: f64,
    pub eval: f64,
    /// Estimated log-radius of the transformed series, when one was needed.
    pub radius_log: Option<f64>,
    pub route: Route,
    /// κ_1, …, κ_l.
    pub levels: Vec<f64>,
    pub certified: bool,
}

/// Least-squares fit of log|a_α| against α over the top decade of stored exponents.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiusEstimate {
    /// 𝔯 with |a_α| ≈ e^{−𝔯α}.
    pub log_radius: f64,
    pub slope: f64,
    /// Smallest c with log|a_α| ≤ c + slope·α on the fitted range.
    pub envelope: f64,
}

pub fn estimate_radius(g: &GenSeries) -> Result<RadiusEstimate, ResumError> {
    let pts: Vec<(f64, f64)> = g
        .terms()
        .map(|(k, c)| (k.values()[0], c.norm()))
        .filter(|(a, c)| *a > 0.0 && *c > 0.0)
        .map(|(a, c)| (a, c.ln()))
        .collect();
    let amax = pts.iter().map(|p| p.0).fold(0.0, f64::max);
    let top: Vec<(f64, f64)> = pts.into_iter().filter(|p| p.0 >= amax / 10.0).collect();
    if top.len() < 2 {
        return Err(ResumError::RadiusEstimation(format!("{} nonzero coefficients in the top decade", top.len())));
    }
    let n = top.len() as f64;
    let mx = top.iter().map(|p| p.0).sum::<f64>() / n;
    let my = top.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = top.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if !(sxx > 0.0) {
        return Err(ResumError::RadiusEstimation("degenerate exponent range".into()));
    }
    let slope = top.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx;
    let envelope = top.iter().map(|p| p.1 - slope * p.0).fold(f64::NEG_INFINITY, f64::max);
    if !slope.is_finite() || !envelope.is_finite() {
        return Err(ResumError::RadiusEstimation("non-finite fit".into()));
    }
    Ok(RadiusEstimate { log_radius: -slope, slope, envelope })
}

/// Σ_{α ∈ Δ, α > cut} q^α, enumerating Δ about 655 units past the cutoff.
fn support_tail(support: &SupportDescriptor, cut: f64, q: f64) -> f64 {
    let far = cut + 655.0;
    let beyond = q.powf(far) / (1.0 - q);
    match support.with_cutoff(far).enumerate() {
        Ok(v) => v.iter().filter(|a| **a > cut + MERGE_TOL).map(|a| q.powf(*a)).sum::<f64>() + beyond,
        Err(_) => q.powf(cut) / (1.0 - q),
    }
}

fn is_exact(f: &GenSeries) -> bool {
    f.cutoff()[0].is_infinite() || f.tail().is_some_and(|t| t.is_exact())
}

/// Increments κ_1 = k_1, κ_i = k_i − k_{i−1} with zero levels dropped.
pub fn levels(k: &[f64]) -> Result<Vec<f64>, ResumError> {
    let mut out = Vec::new();
    let mut prev = 0.0;
    for &ki in k {
        if !(ki.is_finite() && ki >= prev) || (ki == prev && !out.is_empty()) {
            return Err(ResumError::InvalidArgument(format!("K = {k:?} must be strictly increasing and nonnegative")));
        }
        if ki > 0.0 {
            out.push(ki - prev);
        }
        prev = ki;
    }
    Ok(out)
}

fn inf_opts(o: &TransformOptions) -> TransformOptions {
    TransformOptions { max_truncation: f64::INFINITY, ..*o }
}

/// L^κ h as a function on the positive real direction, for the outer levels of a nested chain.
///
/// Its growth bound is sampled, so the result is marked uncertified.
fn intermediate(h: LogFunction, kappa: f64, opts: TransformOptions) -> LogFunction {
    let flat = h.flat_bound().map(|f| Flatness { c0: f.c0 * gamma(f.alpha * kappa), alpha: f.alpha, edge: f.edge });
    let inner = h.clone();
    let eval = move |w: LogCoord| -> Eval {
        match w {
            LogCoord::NegInf => Eval::exact(Complex64::new(0.0, 0.0)),
            w => match log_laplace_lambda(&inner, kappa, w, None, &inf_opts(&opts)) {
                Ok(q) => q.as_eval(),
                Err(_) => Eval { value: Complex64::new(f64::NAN, f64::NAN), err: f64::INFINITY },
            },
        }
    };
    let sup = (0..=24)
        .map(|j| eval(LogCoord::real(-8.0 + 0.5 * j as f64)))
        .map(|e| e.value.norm() + e.err)
        .fold(0.0, f64::max);
    let mut out = LogFunction::new(LogRegion::Sector { d: 0.0, r: f64::INFINITY, theta: 0.45 * PI * kappa }, eval)
        .with_growth(GrowthBound::Growth { c: 2.0 * sup, d: 0.0, scale: 1.0 });
    if let Some(f) = flat {
        out = out.with_flatness(f);
    }
    out.certified = false;
    out
}

/// Sums Tf in the positive real direction at w through the Borel chain and truncated Laplace integrals.
pub fn multisum(tf: &GenSeries, k: &[f64], w: LogCoord, opts: &MultisumOptions) -> Result<MultisumResult, ResumError> {
    if tf.nvars() != 1 {
        return Err(ResumError::InvalidArgument(format!("expected a one-variable series, got {}", tf.nvars())));
    }
    let kap = levels(k)?;
    if kap.is_empty() {
        let s = tf.eval_logsum(&LogPoint::one(w))?;
        let err = if s.certified { s.error } else { f64::INFINITY };
        if !(err <= opts.tol) {
            return Err(ResumError::Inadmissible { bound: err, tol: opts.tol });
        }
        return Ok(MultisumResult {
            value: s.value,
            error_bound: err,
            truncation: 0.0,
            quadrature: 0.0,
            eval: err,
            radius_log: None,
            route: Route::Convergent,
            levels: kap,
            certified: s.certified,
        });
    }
    let lam_in = *kap.last().expect("nonempty");
    let a0 = tf.constant_term();
    let mut g = tf.sub(&GenSeries::constant(1, a0))?;
    for &l in kap.iter().rev() {
        g = g.formal_borel(l)?;
    }
    let terms: Vec<(Vec<f64>, Complex64)> = g.terms().map(|(a, c)| (a.values(), *c)).collect();
    let mut radius_log = None;
    let mut certified = true;
    let (mut h, route) = if let Some(f) = &opts.inner {
        certified = f.certified;
        (f.clone(), Route::ClosedForm)
    } else if is_exact(tf) {
        (LogFunction::from_series(&GenSeries::from_terms(1, terms, None)?)?, Route::BorelLaplace)
    } else {
        let est = estimate_radius(&g)?;
        let rp = est.log_radius + opts.margin.ln();
        radius_log = Some(est.log_radius);
        let support = tf.support()[0].clone();
        let cut = support.cutoff;
        let bound = est.envelope.exp() * support_tail(&support, cut, opts.margin);
        let gs = GenSeries::from_terms(1, terms, Some(vec![support]))?.with_tail(Some(TailBound::new(vec![rp.exp()], bound)));
        let h = LogFunction::from_series(&gs)?;
        let flat = h.flat_bound();
        let growth = match (opts.growth, tf.tail()) {
            (Some((c, d)), _) => GrowthBound::Growth { c, d, scale: lam_in },
            (None, Some(t)) if kap.len() == 1 && !t.is_exact() => {
                let r = t.radius[0];
                let n = tf.norm(&[r]);
                if !n.certified {
                    return Err(ResumError::Uncertified("‖Tf‖ at its tail radius".into()));
                }
                GrowthBound::Growth { c: 1.13 * n.value, d: 2.0 * r.powf(-1.0 / lam_in), scale: lam_in }
            }
            _ => return Err(ResumError::Uncertified("no growth certificate for the Borel sum".into())),
        };
        // The fitted tail is an estimate, not a bound.
        certified = false;
        let mut h = h.with_growth(growth);
        if let Some(f) = flat {
            h = h.with_flatness(f);
        }
        (h, Route::BorelLaplace)
    };
    for &l in kap[1..].iter().rev() {
        h = intermediate(h, l, opts.transform);
        certified = false;
    }
    let q = log_laplace_lambda(&h, kap[0], w, None, &inf_opts(&opts.transform))?;
    let err = q.total_error();
    if !(err <= opts.tol) {
        return Err(ResumError::Inadmissible { bound: err, tol: opts.tol });
    }
    Ok(MultisumResult {
        value: a0 + q.value,
        error_bound: err,
        truncation: q.truncation_bound,
        quadrature: q.abs_error_estimate,
        eval: q.eval_error,
        radius_log,
        route,
        levels: kap,
        certified: certified && q.certified,
    })
}
