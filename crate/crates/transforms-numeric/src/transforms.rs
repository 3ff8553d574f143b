use std::f64::consts::{E, FRAC_PI_2, PI};

use log_geometry::LogRegion;
use series_core::{Complex64, LogCoord};

use crate::error::TransformError;
use crate::function::{Eval, Flatness, GrowthBound, LogFunction};
use crate::quadrature::{integrate, QuadOptions, Sample};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Boundary of the closed log-sector cl S(d, 𝔯, θ) used as a Borel contour.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Contour {
    pub d: f64,
    pub r: f64,
    pub theta: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    /// Certified bound on the integral over the discarded parts of the path.
    pub truncation_bound: f64,
    /// Propagated error of the integrand's own evaluations.
    pub eval_error: f64,
    pub panels: usize,
    /// Real parts bounding the integrated part of the path.
    pub limits: (f64, f64),
    pub certified: bool,
}

impl QuadratureResult {
    fn zero() -> Self {
        QuadratureResult {
            value: Complex64::new(0.0, 0.0),
            abs_error_estimate: 0.0,
            truncation_bound: 0.0,
            eval_error: 0.0,
            panels: 0,
            limits: (f64::NEG_INFINITY, f64::NEG_INFINITY),
            certified: true,
        }
    }

    pub fn total_error(&self) -> f64 {
        self.abs_error_estimate + self.truncation_bound + self.eval_error
    }

    pub fn as_eval(&self) -> Eval {
        Eval { value: self.value, err: self.total_error() }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct TransformOptions {
    pub quad: QuadOptions,
    /// Target for each discarded tail when the truncation is chosen automatically.
    pub tail_tol: f64,
    /// Largest acceptable truncation bound.
    pub max_truncation: f64,
}

impl Default for TransformOptions {
    fn default() -> Self {
        TransformOptions { quad: QuadOptions::default(), tail_tol: 1e-15, max_truncation: 1e-6 }
    }
}

fn nan_eval() -> Eval {
    Eval { value: Complex64::new(f64::NAN, f64::NAN), err: f64::INFINITY }
}

/// A contour at direction Im w reaching out to Re w, inside the domain of f.
pub fn default_contour(f: &LogFunction, w: Complex64) -> Result<Contour, TransformError> {
    let (rsup, tsup) = f.sector_shape();
    let room = tsup - w.im.abs();
    if !(room > FRAC_PI_2) {
        return Err(TransformError::ContourOutsideDomain(format!(
            "no Borel contour through direction {} fits in the domain",
            w.im
        )));
    }
    let theta = (0.5 * (FRAC_PI_2 + room)).min(0.75 * PI);
    let r = if rsup.is_finite() { w.re.min(rsup - 0.5) } else { w.re };
    Ok(Contour { d: w.im, r, theta })
}

fn check_on_domain(f: &LogFunction, pts: impl Iterator<Item = Complex64>) -> Result<(), TransformError> {
    for p in pts {
        if !f.domain.contains_complex(p) {
            return Err(TransformError::ContourOutsideDomain(format!("{p} is not in {:?}", f.domain)));
        }
    }
    Ok(())
}

/// 𝓑_{d'} f(w) = (e^w/2πi) ∫_{∂S̄₀} e^{e^{w−η}} f(η) dη/e^η.
pub fn log_borel(f: &LogFunction, w: LogCoord, c: Contour, opts: &TransformOptions) -> Result<QuadratureResult, TransformError> {
    if !(c.theta > FRAC_PI_2 && c.theta.is_finite() && c.r.is_finite() && c.d.is_finite()) {
        return Err(TransformError::InvalidArgument(format!("contour {c:?} needs finite 𝔯, d and θ' > π/2")));
    }
    let w = match w {
        LogCoord::NegInf => return Ok(QuadratureResult::zero()),
        LogCoord::Finite(w) => w,
    };
    let v = w.im - c.d;
    if !(v.abs() < c.theta - FRAC_PI_2) {
        return Err(TransformError::OutsideImage(format!("{w}")));
    }
    let growth = f
        .growth
        .as_ref()
        .ok_or_else(|| TransformError::MissingGrowth("log_borel needs a bound on |f| along the contour".into()))?;
    let kappa = -(v + c.theta).cos().max((v - c.theta).cos());
    let big_m = growth.at(c.r).max(f64::MIN_POSITIVE);
    // Both rays left of −L contribute at most M e^{−κX}/(2πκ) each, X = e^{Re w + L}.
    let x = (50.0 / kappa).max((big_m / (PI * kappa * opts.tail_tol)).ln() / kappa);
    let big_l = (x.ln() - w.re).max(1.0 - c.r);
    let trunc = big_m * (-kappa * (w.re + big_l).exp()).exp() / (PI * kappa);

    let lo_im = c.d - c.theta;
    let hi_im = c.d + c.theta;
    let n = 24;
    let ray_pts = (0..=n).map(|j| -big_l + (c.r + big_l) * j as f64 / n as f64);
    check_on_domain(
        f,
        ray_pts
            .clone()
            .map(|t| Complex64::new(t, lo_im))
            .chain(ray_pts.map(|t| Complex64::new(t, hi_im)))
            .chain((0..=n).map(|j| Complex64::new(c.r, lo_im + (hi_im - lo_im) * j as f64 / n as f64))),
    )?;

    let kernel = |eta: Complex64| -> Complex64 {
        let z = w - eta;
        (z + z.exp()).exp() / (2.0 * PI * I)
    };
    let sample = |eta: Complex64, jac: Complex64| -> Sample {
        let k = kernel(eta) * jac;
        let fv = f.eval_at(eta);
        Sample { value: k * fv.value, err: k.norm() * fv.err }
    };
    let one = Complex64::new(1.0, 0.0);
    let lower = integrate(|t| sample(Complex64::new(t, lo_im), one), -big_l, c.r, &opts.quad)?;
    let vert = integrate(|s| sample(Complex64::new(c.r, s), I), lo_im, hi_im, &opts.quad)?;
    let upper = integrate(|t| sample(Complex64::new(t, hi_im), one), -big_l, c.r, &opts.quad)?;
    let q = lower.add(vert).add(upper.scaled(-one));
    Ok(QuadratureResult {
        value: q.value,
        abs_error_estimate: q.err,
        truncation_bound: trunc,
        eval_error: q.eval_err,
        panels: q.panels,
        limits: (-big_l, c.r),
        certified: f.certified,
    })
}

/// Bound on ∫_{L₂}^∞ |e^{−e^{η−w}} f(η)| dη, κ = e^{−Re w} cos(Im w − d); None when the
/// bound's concavity hypotheses fail at L₂.
fn right_tail(g: &GrowthBound, kappa: f64, l2: f64) -> Option<f64> {
    let ke = kappa * l2.exp();
    match g {
        GrowthBound::Exponents(v) => {
            let mut s = 0.0;
            for (a, c) in v {
                if *c == 0.0 {
                    continue;
                }
                if ke <= *a {
                    return None;
                }
                s += (c.ln() + a * l2 - ke).exp() / (ke - a);
            }
            Some(s)
        }
        GrowthBound::Growth { c, d, scale } => {
            if *d > 0.0 && *scale < 1.0 {
                return None;
            }
            let gr = d * (l2 / scale).exp();
            let g1 = gr / scale - ke;
            let g2 = gr / (scale * scale) - ke;
            if g1 >= 0.0 || g2 >= 0.0 {
                return None;
            }
            Some((c.ln() + gr - ke).exp() / -g1)
        }
    }
}

fn left_tail(fl: &Flatness, l1: f64) -> f64 {
    if fl.c0 == 0.0 {
        return 0.0;
    }
    fl.c0 * (-fl.alpha * l1).exp() / fl.alpha
}

/// 𝓛_d f(w) = ∫_{T(d)} e^{−e^{η−w}} f(η) dη, integrated over Re η ∈ [−L₁, L₂].
pub fn log_laplace(
    f: &LogFunction,
    w: LogCoord,
    d: f64,
    truncation: Option<(f64, f64)>,
    opts: &TransformOptions,
) -> Result<QuadratureResult, TransformError> {
    let w = match w {
        LogCoord::NegInf => return Ok(QuadratureResult::zero()),
        LogCoord::Finite(w) => w,
    };
    let cosv = (w.im - d).cos();
    if !(cosv > 0.0) {
        return Err(TransformError::OutsideImage(format!("{w}")));
    }
    let kappa = (-w.re).exp() * cosv;
    let growth = f
        .growth
        .as_ref()
        .ok_or_else(|| TransformError::MissingGrowth("log_laplace needs a growth bound for the right tail".into()))?;
    let flat = f
        .flat_bound()
        .ok_or_else(|| TransformError::MissingGrowth("log_laplace needs |f| = O(e^{α Re w}) with α > 0".into()))?;
    let (rsup, _) = f.sector_shape();

    let (l1, l2) = match truncation {
        Some(t) => t,
        None => {
            let l1 = if flat.c0 == 0.0 {
                40.0 - w.re
            } else {
                ((flat.c0 / (flat.alpha * opts.tail_tol)).ln() / flat.alpha).max(1.0 - w.re)
            };
            let l1 = l1.max(-flat.edge);
            let l2 = if rsup.is_finite() {
                rsup - 1e-3
            } else {
                let mut t = w.re.max(0.0) + 1.0;
                while right_tail(growth, kappa, t).is_none_or(|b| b > opts.tail_tol) && t < w.re.max(0.0) + 80.0 {
                    t += 0.25;
                }
                t
            };
            (l1, l2)
        }
    };
    if !(-l1 < l2) {
        return Err(TransformError::InvalidArgument(format!("empty truncation window [{}, {l2}]", -l1)));
    }
    if -l1 > flat.edge {
        return Err(TransformError::MissingGrowth(format!("flatness bound only holds for Re η ≤ {}", flat.edge)));
    }
    let trunc = left_tail(&flat, l1) + right_tail(growth, kappa, l2).unwrap_or(f64::INFINITY);
    if !(trunc <= opts.max_truncation) {
        return Err(TransformError::TruncationTooLarge { bound: trunc, tol: opts.max_truncation });
    }
    let n = 24;
    check_on_domain(f, (0..=n).map(|j| Complex64::new(-l1 + (l2 + l1) * j as f64 / n as f64, d)))?;

    let sample = |t: f64| -> Sample {
        let eta = Complex64::new(t, d);
        let k = (-(eta - w).exp()).exp();
        let fv = f.eval_at(eta);
        Sample { value: k * fv.value, err: k.norm() * fv.err }
    };
    let mid = w.re.clamp(-l1, l2);
    let q = integrate(sample, -l1, mid, &opts.quad)?.add(integrate(sample, mid, l2, &opts.quad)?);
    Ok(QuadratureResult {
        value: q.value,
        abs_error_estimate: q.err,
        truncation_bound: trunc,
        eval_error: q.eval_err,
        panels: q.panels,
        limits: (-l1, l2),
        certified: f.certified,
    })
}

/// 𝓑^λ f = 𝓑(f∘m_λ)∘m_{1/λ}; the contour is given in the coordinates of f.
pub fn log_borel_lambda(
    f: &LogFunction,
    lambda: f64,
    w: LogCoord,
    c: Contour,
    opts: &TransformOptions,
) -> Result<QuadratureResult, TransformError> {
    let g = f.ramified(lambda)?;
    let c = Contour { d: c.d / lambda, r: c.r / lambda, theta: c.theta / lambda };
    log_borel(&g, w.scale(1.0 / lambda), c, opts)
}

/// 𝓛^λ f = 𝓛(f∘m_λ)∘m_{1/λ}; the truncation is given in the coordinates of f.
pub fn log_laplace_lambda(
    f: &LogFunction,
    lambda: f64,
    w: LogCoord,
    truncation: Option<(f64, f64)>,
    opts: &TransformOptions,
) -> Result<QuadratureResult, TransformError> {
    let g = f.ramified(lambda)?;
    log_laplace(&g, w.scale(1.0 / lambda), 0.0, truncation.map(|(a, b)| (a / lambda, b / lambda)), opts)
}

/// Sup of |𝓑f| over S(d', r, θ' − π/2) given ‖f‖ on cl S(d', 𝔯', θ') ⊂ S(·, ·, θ).
pub fn borel_sup_bound(norm: f64, theta: f64, theta_p: f64, r: f64, r_p: f64) -> Result<f64, TransformError> {
    if !(FRAC_PI_2 < theta_p && theta_p < theta) {
        return Err(TransformError::InvalidArgument(format!("need π/2 < θ' < θ, got θ' = {theta_p}, θ = {theta}")));
    }
    let c = ((theta - theta_p) / 2.0).sin();
    Ok(if r <= r_p { norm / c * E } else { norm / c * (r - r_p).exp().exp() * (r - r_p).exp() })
}

/// 𝓑f as a function, with the growth certificate C = e‖f‖/sin((θ−θ')/2), D = 2e^{−𝔯'}.
///
/// `cert_radius` is the 𝔯' used for the certificate; by default half a unit inside
/// the domain of f, or 2 when f is entire.
pub fn borel_function(f: &LogFunction, cert_radius: Option<f64>, opts: &TransformOptions) -> Result<LogFunction, TransformError> {
    let (rsup, tsup) = f.sector_shape();
    if !(tsup > FRAC_PI_2) {
        return Err(TransformError::ContourOutsideDomain("domain of f is not wider than a half plane".into()));
    }
    let growth = f
        .growth
        .as_ref()
        .ok_or_else(|| TransformError::MissingGrowth("log_borel needs a bound on |f|".into()))?;
    let theta = tsup.min(PI);
    let theta_c = 0.5 * (theta + FRAC_PI_2);
    let c = ((theta - theta_c) / 2.0).sin();
    let r_c = cert_radius.unwrap_or(if rsup.is_finite() { rsup - 0.5 } else { 2.0 });
    let norm = growth.at(r_c);
    let cert = GrowthBound::Growth { c: E * norm / c, d: 2.0 * (-r_c).exp(), scale: 1.0 };
    let flat = f.nonconstant_flatness().map(|fl| {
        let k = -theta_c.cos();
        Flatness { c0: fl.c0 * (E + (-k).exp() / (PI * k)), alpha: fl.alpha, edge: fl.edge.min(rsup - 0.5) }
    });
    let domain = if tsup.is_infinite() {
        LogRegion::disk1(f64::INFINITY)
    } else {
        LogRegion::Sector { d: 0.0, r: f64::INFINITY, theta: tsup - FRAC_PI_2 }
    };
    let inner = f.clone();
    let o = *opts;
    let mut out = LogFunction::new(domain, move |w| match w {
        LogCoord::NegInf => Eval::exact(Complex64::new(0.0, 0.0)),
        LogCoord::Finite(z) => default_contour(&inner, z)
            .and_then(|c| log_borel(&inner, w, c, &o))
            .map_or_else(|_| nan_eval(), |q| q.as_eval()),
    })
    .with_growth(cert);
    out.flatness = flat;
    out.certified = f.certified;
    Ok(out)
}
