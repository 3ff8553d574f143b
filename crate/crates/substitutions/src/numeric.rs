use series_core::{Complex64, LogCoord, LogPoint, MixedSeries};

use crate::error::SubstError;
use crate::kind::{after_removal, SubstKind, Substitution};

#[derive(Clone, Debug, PartialEq)]
pub struct ConsistencyReport {
    pub samples: usize,
    /// max |σF(w', y') − F(σ̃(w', y'))|.
    pub max_discrepancy: f64,
    pub argmax: Option<usize>,
}

fn add(a: LogCoord, b: LogCoord) -> LogCoord {
    match (a, b) {
        (LogCoord::Finite(a), LogCoord::Finite(b)) => LogCoord::Finite(a + b),
        _ => LogCoord::NegInf,
    }
}

fn log_of(z: Complex64) -> LogCoord {
    LogCoord::Finite(z.ln())
}

fn inside(y: Complex64, radius: f64, what: &str) -> Result<(), SubstError> {
    if y.norm() < radius {
        Ok(())
    } else {
        Err(SubstError::OutsideDomain(format!("|{what}| = {} is not below {radius}", y.norm())))
    }
}

impl Substitution {
    /// σ̃: source coordinates (w, y) of a target point (w', y').
    pub fn lift_point(&self, w: &LogPoint, y: &[Complex64]) -> Result<(LogPoint, Vec<Complex64>), SubstError> {
        let (mt, nt) = self.target();
        if w.dim() != mt || y.len() != nt {
            return Err(SubstError::Arity { m: mt, n: nt, got_m: w.dim(), got_n: y.len() });
        }
        let wc = |i: usize| w.coord(i);
        let dropped = |i: usize| -> Vec<LogCoord> { (0..self.m).map(|s| if s == i { LogCoord::NegInf } else { wc(after_removal(s, i)) }).collect() };
        let (ws, ys): (Vec<LogCoord>, Vec<Complex64>) = match &self.kind {
            SubstKind::Permutation { perm } => (perm.iter().map(|&p| wc(p)).collect(), y.to_vec()),
            SubstKind::Ramification { i, alpha } => {
                let mut v = w.0.clone();
                v[*i] = v[*i].scale(*alpha);
                (v, y.to_vec())
            }
            SubstKind::RegularBlowUp { i, j, lambda } => {
                let v = y[nt - 1];
                inside(v, *lambda, "y'")?;
                let mut ws = dropped(*i);
                ws[*i] = add(wc(after_removal(*j, *i)), log_of(Complex64::new(*lambda, 0.0) + v));
                (ws, y[..self.n].to_vec())
            }
            SubstKind::SingularBlowUp { i, j } => {
                let mut v = w.0.clone();
                v[*i] = add(wc(*i), wc(*j));
                (v, y.to_vec())
            }
            SubstKind::Translation { a, b, .. } => {
                let (mut kept, mut fresh) = (0, self.n);
                let mut ws = Vec::with_capacity(self.m);
                for ai in a {
                    if *ai == 0.0 {
                        ws.push(wc(kept));
                        kept += 1;
                    } else {
                        inside(y[fresh], *ai, "y'")?;
                        ws.push(log_of(Complex64::new(*ai, 0.0) + y[fresh]));
                        fresh += 1;
                    }
                }
                (ws, b.iter().zip(y).map(|(b, y)| b + y).collect())
            }
            SubstKind::Infinitesimal { targets, .. } => {
                let ys = targets.iter().map(|t| t.eval(w, y)).collect::<Result<_, _>>()?;
                ((0..self.m).map(wc).collect(), ys)
            }
            SubstKind::Identify { i, j } => {
                let mut ws = dropped(*i);
                ws[*i] = wc(after_removal(*j, *i));
                (ws, y.to_vec())
            }
            SubstKind::SetZero { i } => (dropped(*i), y.to_vec()),
        };
        Ok((LogPoint(ws), ys))
    }
}

/// Compares σF with F ∘ σ̃ at sample points (w', y') of the target chart.
pub fn numeric_consistency(
    sigma: &Substitution,
    f: &MixedSeries,
    samples: &[(LogPoint, Vec<Complex64>)],
) -> Result<ConsistencyReport, SubstError> {
    let sf = sigma.apply(f)?;
    let mut report = ConsistencyReport { samples: samples.len(), max_discrepancy: 0.0, argmax: None };
    for (idx, (w, y)) in samples.iter().enumerate() {
        let (ws, ys) = sigma.lift_point(w, y)?;
        let d = (sf.eval(w, y)? - f.eval(&ws, &ys)?).norm();
        if !d.is_finite() {
            return Err(SubstError::OutsideDomain(format!("non-finite value at sample {idx}")));
        }
        if d > report.max_discrepancy || report.argmax.is_none() {
            report.max_discrepancy = d;
            report.argmax = Some(idx);
        }
    }
    Ok(report)
}
