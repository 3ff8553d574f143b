use std::f64::consts::PI;

use log_geometry::LogRegion;
use resummation::{multisum, MultisumOptions, ResumError};
use series_core::{ln_gamma, Complex64, GenSeries, LogCoord, LogPoint};
use transforms_numeric::{Eval, Flatness, GrowthBound, LogFunction, QuadOptions, TransformOptions};

use super::bundled_series;
use crate::table::{num, short};
use crate::{par_map, CliError, Grid, RunConfig, Table};

/// h(ζ) = 1/(e^ζ − 1) − 1/ζ + 1/2, the Borel sum of the Stirling series in X = 1/x.
///
/// Inside |ζ| < 1 it is evaluated from the formal Borel transform of `stirling` itself.
pub fn binet_inner(stirling: &GenSeries) -> Result<LogFunction, ResumError> {
    let b = stirling.formal_borel(1.0)?;
    let coeffs: Vec<(i32, f64)> = b.terms().map(|(k, c)| (k.values()[0].round() as i32, c.re)).collect();
    let h = move |z: Complex64| -> Complex64 {
        if z.norm() < 1.0 {
            coeffs.iter().map(|(n, c)| z.powi(*n) * *c).sum()
        } else {
            (z.exp() - 1.0).inv() - z.inv() + 0.5
        }
    };
    // 0 < h(t) < min(t/12, 1/2) for t > 0.
    Ok(LogFunction::new(LogRegion::Line { d: 0.0 }, move |w: LogCoord| Eval { value: h(w.exp()), err: 2e-15 })
        .with_growth(GrowthBound::Exponents(vec![(0.0, 0.5)]))
        .with_flatness(Flatness { c0: 1.0 / 12.0, alpha: 1.0, edge: f64::INFINITY }))
}

fn gamma_options(stirling: &GenSeries) -> Result<MultisumOptions, ResumError> {
    let quad = QuadOptions { rel_tol: 1e-13, abs_tol: 1e-16, ..QuadOptions::default() };
    Ok(MultisumOptions {
        transform: TransformOptions { quad, ..TransformOptions::default() },
        tol: f64::INFINITY,
        inner: Some(binet_inner(stirling)?),
        ..MultisumOptions::default()
    })
}

fn log_gamma_with(stirling: &GenSeries, opts: &MultisumOptions, x: f64) -> Result<(f64, f64), ResumError> {
    if x < 1.0 {
        let (v, b) = log_gamma_with(stirling, opts, x + 1.0)?;
        return Ok((v - x.ln(), b + 1e-16 * x.ln().abs()));
    }
    let r = multisum(stirling, &[1.0], LogCoord::real(-x.ln()), opts)?;
    let head = (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln();
    Ok((head + r.value.re, r.error_bound + 4.0 * f64::EPSILON * head.abs()))
}

/// log Γ(x) through the resummed Stirling series, with its error bound.
pub fn log_gamma(x: f64) -> Result<(f64, f64), ResumError> {
    if !(x > 0.0) {
        return Err(ResumError::InvalidArgument(format!("log Γ needs x > 0, got {x}")));
    }
    let s = bundled_series("stirling");
    log_gamma_with(&s, &gamma_options(&s)?, x)
}

pub fn cmd_gamma(cfg: &RunConfig) -> Result<Table, CliError> {
    let xs = cfg.grid_or(Grid::linear(1.0, 10.0, 10));
    if let Some(x) = xs.iter().find(|x| !(**x > 0.0)) {
        return Err(CliError::Usage(format!("gamma needs x > 0, got {x}")));
    }
    let s = bundled_series("stirling");
    let opts = gamma_options(&s).map_err(|e| CliError::Usage(e.to_string()))?;
    let vals = par_map(cfg, &xs, |&x| log_gamma_with(&s, &opts, x))?;
    let mut t = Table::new(&["x", "log_gamma", "gamma", "bound", "reference", "diff", "status"]);
    for (x, v) in xs.iter().zip(vals) {
        let reference = ln_gamma(*x);
        let row = match v {
            Ok((lg, bound)) => {
                let diff = (lg - reference).abs();
                let pass = diff <= cfg.tol;
                t.ok &= pass;
                vec![num(lg), num(lg.exp()), short(bound), num(reference), short(diff), if pass { "ok" } else { "mismatch" }.into()]
            }
            Err(e) => {
                t.ok = false;
                vec!["nan".into(), "nan".into(), "inf".into(), num(reference), "inf".into(), e.to_string()]
            }
        };
        t.rows.push([vec![num(*x)], row].concat());
    }
    Ok(t)
}

/// Number of stored terms n ≤ N summed directly before the tail correction.
const ZETA_TERMS: f64 = 1000.0;

/// Σ n^{−s}: the log-sum of Σ X^{log n} at w = −s over n ≤ N, plus the Euler–Maclaurin
/// tail with three Bernoulli corrections. Returns (value, bound, N^{1−s}/(s − 1)).
pub fn zeta(s: f64) -> Result<(f64, f64, f64), CliError> {
    if !(s >= 2.0) {
        return Err(CliError::Usage(format!("zeta needs s ≥ 2, got {s}")));
    }
    let f = bundled_series("zeta").truncate(&[(ZETA_TERMS + 0.5).ln()]).expect("one-variable truncation");
    let n = f.len() as f64;
    let partial = f.eval_logsum(&LogPoint::reals(&[-s])).expect("one-variable point").value.re;
    // Σ_{m>N} m^{−s} = N^{1−s}/(s−1) − N^{−s}/2 + Σ_k B_{2k}/(2k)! (s)_{2k−1} N^{−s−2k+1} + R.
    let integral = n.powf(1.0 - s) / (s - 1.0);
    let mut tail = integral - 0.5 * n.powf(-s);
    let mut rising = s;
    for (k, b) in [(1, 1.0 / 6.0), (2, -1.0 / 30.0), (3, 1.0 / 42.0)] {
        let fact: f64 = (1..=2 * k).map(f64::from).product();
        tail += b / fact * rising * n.powf(-s - (2 * k - 1) as f64);
        rising *= (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
    }
    // |R| ≤ 2ζ(6)/(2π)^6 · (s)_5 N^{−s−5}, with (s)_5 = rising / ((s+5)(s+6)).
    let s5 = rising / ((s + 5.0) * (s + 6.0));
    let remainder = 2.0 * 1.0173430619844491 / (2.0 * PI).powi(6) * s5 * n.powf(-s - 5.0);
    let rounding = n * (1.0 + s * n.ln()) * f64::EPSILON * partial;
    Ok((partial + tail, remainder + rounding, integral))
}

pub fn cmd_zeta(cfg: &RunConfig) -> Result<Table, CliError> {
    let ss = cfg.grid_or(Grid::linear(2.0, 10.0, 9));
    if let Some(s) = ss.iter().find(|s| !(**s >= 2.0)) {
        return Err(CliError::Usage(format!("zeta needs s ≥ 2, got {s}")));
    }
    let vals = par_map(cfg, &ss, |&s| zeta(s))?;
    let mut t = Table::new(&["s", "value", "bound", "tail_bound"]);
    for (s, v) in ss.iter().zip(vals) {
        let (value, bound, tail) = v?;
        t.rows.push(vec![num(*s), num(value), short(bound), short(tail)]);
    }
    t.notes.push(format!("direct sum over n ≤ {ZETA_TERMS}; tail bound is N^(1−s)/(s−1)"));
    Ok(t)
}
