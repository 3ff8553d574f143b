//! Adaptive 15-point Gauss–Legendre quadrature with interval bisection.

use std::sync::OnceLock;

use series_core::Complex64;

use crate::error::TransformError;

const NODES: usize = 15;

/// A sampled integrand value with its own absolute evaluation error.
#[derive(Clone, Copy, Debug)]
pub struct Sample {
    pub value: Complex64,
    pub err: f64,
}

impl Sample {
    pub fn exact(value: Complex64) -> Self {
        Sample { value, err: 0.0 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    /// Per-panel relative tolerance.
    pub rel_tol: f64,
    /// Absolute tolerance, shared across panels in proportion to their length.
    pub abs_tol: f64,
    pub max_depth: u32,
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { rel_tol: 1e-9, abs_tol: 1e-13, max_depth: 48, max_panels: 200_000 }
    }
}

/// Integral over an interval: value, bisection error estimate, accumulated
/// evaluation error ∫|weight|·err, and the number of accepted panels.
#[derive(Clone, Copy, Debug, Default)]
pub struct Quad {
    pub value: Complex64,
    pub err: f64,
    pub eval_err: f64,
    pub panels: usize,
}

impl Quad {
    pub fn add(self, o: Quad) -> Quad {
        Quad { value: self.value + o.value, err: self.err + o.err, eval_err: self.eval_err + o.eval_err, panels: self.panels + o.panels }
    }

    pub fn scaled(self, c: Complex64) -> Quad {
        let m = c.norm();
        Quad { value: self.value * c, err: self.err * m, eval_err: self.eval_err * m, panels: self.panels }
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration on P₁₅.
fn rule() -> &'static ([f64; NODES], [f64; NODES]) {
    static RULE: OnceLock<([f64; NODES], [f64; NODES])> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = NODES;
        let mut x = [0.0; NODES];
        let mut w = [0.0; NODES];
        for i in 0..n {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, z);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
                let dz = p1 / dp;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            x[i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
        (x, w)
    })
}

fn panel<F: FnMut(f64) -> Sample>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let (x, w) = rule();
    let h = 0.5 * (b - a);
    let m = 0.5 * (a + b);
    let mut s = Complex64::new(0.0, 0.0);
    let mut e = 0.0;
    for i in 0..NODES {
        let v = f(m + h * x[i]);
        s += v.value * w[i];
        e += v.err * w[i];
    }
    (s * h, e * h.abs())
}

/// ∫_a^b f(t) dt.
pub fn integrate<F: FnMut(f64) -> Sample>(mut f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<Quad, TransformError> {
    if a == b {
        return Ok(Quad::default());
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(TransformError::InvalidArgument(format!("quadrature interval [{a}, {b}] is not finite")));
    }
    let total = (b - a).abs();
    let mut out = Quad::default();
    let first = panel(&mut f, a, b);
    let mut stack = vec![(a, b, first, 0u32)];
    while let Some((lo, hi, (whole, _), depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = panel(&mut f, lo, mid);
        let right = panel(&mut f, mid, hi);
        let refined = left.0 + right.0;
        let diff = (refined - whole).norm();
        let share = opts.abs_tol * (hi - lo).abs() / total;
        if !diff.is_finite() || !refined.norm().is_finite() {
            return Err(TransformError::NonConvergent(format!("non-finite integrand on [{lo}, {hi}]")));
        }
        if diff <= (opts.rel_tol * refined.norm()).max(share) {
            out.value += refined;
            out.err += diff;
            out.eval_err += left.1 + right.1;
            out.panels += 2;
            continue;
        }
        if depth >= opts.max_depth || stack.len() + out.panels > opts.max_panels {
            return Err(TransformError::NonConvergent(format!(
                "adaptive refinement did not converge on [{lo}, {hi}] (difference {diff:e})"
            )));
        }
        stack.push((mid, hi, right, depth + 1));
        stack.push((lo, mid, left, depth + 1));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        let (x, w) = rule();
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        assert!(x.iter().all(|t| t.abs() < 1.0));
    }

    #[test]
    fn smooth_and_peaked() {
        let o = QuadOptions::default();
        let q = integrate(|t| Sample::exact(Complex64::new(t.exp(), 0.0)), 0.0, 1.0, &o).unwrap();
        assert!((q.value.re - (1f64.exp() - 1.0)).abs() < 1e-13);
        let q = integrate(|t| Sample::exact(Complex64::new(1.0 / (1e-4 + t * t), 0.0)), -1.0, 1.0, &o).unwrap();
        let exact = 2.0 * (1.0 / 1e-2) * (1.0f64 / 1e-2).atan();
        assert!((q.value.re - exact).abs() / exact < 1e-9);
    }
}
