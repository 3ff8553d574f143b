//! Descriptors for natural exponent sets.
//!
//! Every kind here denotes a set A ⊆ [0, ∞) such that A ∩ (−∞, a) is finite
//! for every a. Enumeration up to the cutoff is strictly increasing.

use std::collections::BTreeSet;

use crate::error::SeriesError;
use crate::exponent::{ExponentKey, MERGE_TOL};

/// Upper limit on enumerated elements; larger windows are refused.
pub const MAX_ENUMERATION: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq)]
pub enum SupportKind {
    Finite(Vec<f64>),
    /// {k·step : k ∈ ℕ}
    Arith { step: f64 },
    /// {log n : n ≥ 1}
    LogInt,
    /// Additive monoid generated by the two sets.
    SumClosure(Box<SupportKind>, Box<SupportKind>),
    /// {factor·a : a ∈ base}
    Scaled { base: Box<SupportKind>, factor: f64 },
    /// Cartesian product, one factor per variable.
    Product(Vec<SupportKind>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SupportDescriptor {
    pub kind: SupportKind,
    pub cutoff: f64,
}

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= MERGE_TOL * scale.max(1.0)
}

impl SupportKind {
    pub fn sum_closure(a: SupportKind, b: SupportKind) -> SupportKind {
        if a == b && a.is_sum_closed() {
            return a;
        }
        SupportKind::SumClosure(Box::new(a), Box::new(b))
    }

    pub fn dims(&self) -> usize {
        match self {
            SupportKind::Product(v) => v.len(),
            _ => 1,
        }
    }

    pub fn is_natural(&self) -> bool {
        match self {
            SupportKind::Finite(v) => v.iter().all(|x| x.is_finite() && *x >= 0.0),
            SupportKind::Arith { step } => step.is_finite() && *step > 0.0,
            SupportKind::LogInt => true,
            SupportKind::SumClosure(a, b) => a.is_natural() && b.is_natural() && a.dims() == 1 && b.dims() == 1,
            SupportKind::Scaled { base, factor } => base.is_natural() && factor.is_finite() && *factor > 0.0,
            SupportKind::Product(v) => v.iter().all(|k| k.dims() == 1 && k.is_natural()),
        }
    }

    pub fn is_sum_closed(&self) -> bool {
        match self {
            SupportKind::Finite(v) => {
                let set: Vec<f64> = v.clone();
                set.iter().all(|a| set.iter().all(|b| set.iter().any(|c| close(a + b, *c, a + b))))
            }
            SupportKind::Arith { .. } | SupportKind::LogInt | SupportKind::SumClosure(..) => true,
            SupportKind::Scaled { base, .. } => base.is_sum_closed(),
            SupportKind::Product(v) => v.iter().all(|k| k.is_sum_closed()),
        }
    }

    /// Strictly increasing elements in [0, cutoff].
    pub fn enumerate(&self, cutoff: f64) -> Result<Vec<f64>, SeriesError> {
        let too_many = || SeriesError::InvalidArgument(format!("support window up to {cutoff} is too large to enumerate"));
        let out = match self {
            SupportKind::Finite(v) => {
                let mut s: BTreeSet<ExponentKey> = BTreeSet::new();
                for &x in v {
                    if x <= cutoff + MERGE_TOL {
                        s.insert(ExponentKey::try_new(x).ok_or(SeriesError::NegativeExponent(x))?);
                    }
                }
                s.into_iter().map(|k| k.value()).collect()
            }
            SupportKind::Arith { step } => {
                let n = (cutoff / step + 1e-9).floor();
                if n > MAX_ENUMERATION as f64 {
                    return Err(too_many());
                }
                (0..=n as usize).map(|k| k as f64 * step).collect()
            }
            SupportKind::LogInt => {
                let top = (cutoff + MERGE_TOL).exp().floor();
                if top > MAX_ENUMERATION as f64 {
                    return Err(too_many());
                }
                (1..=top as u64).map(|n| (n as f64).ln()).collect()
            }
            SupportKind::SumClosure(a, b) => {
                let mut gens: BTreeSet<ExponentKey> = BTreeSet::new();
                for x in a.enumerate(cutoff)?.into_iter().chain(b.enumerate(cutoff)?) {
                    if x > MERGE_TOL {
                        gens.insert(ExponentKey::new(x));
                    }
                }
                let gens: Vec<f64> = gens.into_iter().map(|k| k.value()).collect();
                let mut set: BTreeSet<ExponentKey> = BTreeSet::new();
                set.insert(ExponentKey::ZERO);
                let mut frontier = vec![0.0];
                while let Some(s) = frontier.pop() {
                    for g in &gens {
                        let t = s + g;
                        if t > cutoff + MERGE_TOL {
                            break;
                        }
                        if set.insert(ExponentKey::new(t)) {
                            if set.len() > MAX_ENUMERATION {
                                return Err(too_many());
                            }
                            frontier.push(t);
                        }
                    }
                }
                set.into_iter().map(|k| k.value()).collect()
            }
            SupportKind::Scaled { base, factor } => {
                base.enumerate(cutoff / factor)?.into_iter().map(|x| x * factor).collect()
            }
            SupportKind::Product(_) => {
                return Err(SeriesError::InvalidArgument("cannot enumerate a product support as a 1-d set".into()))
            }
        };
        Ok(out)
    }

    pub fn contains(&self, x: f64) -> bool {
        if !(x >= -MERGE_TOL) {
            return false;
        }
        match self {
            SupportKind::Finite(v) => v.iter().any(|y| close(*y, x, 1.0)),
            SupportKind::Arith { step } => {
                let k = (x / step).round();
                close(k * step, x, k)
            }
            SupportKind::LogInt => {
                let n = x.exp().round();
                n >= 1.0 && close(n.ln(), x, 1.0)
            }
            SupportKind::SumClosure(..) => match self.enumerate(x + 2.0 * MERGE_TOL) {
                Ok(v) => v.iter().any(|y| close(*y, x, 1.0)),
                Err(_) => false,
            },
            SupportKind::Scaled { base, factor } => base.contains(x / factor),
            SupportKind::Product(_) => false,
        }
    }

    pub fn contains_point(&self, xs: &[f64]) -> bool {
        match self {
            SupportKind::Product(v) => v.len() == xs.len() && v.iter().zip(xs).all(|(k, x)| k.contains(*x)),
            k => xs.len() == 1 && k.contains(xs[0]),
        }
    }
}

impl SupportDescriptor {
    pub fn new(kind: SupportKind, cutoff: f64) -> Result<Self, SeriesError> {
        if !kind.is_natural() {
            return Err(SeriesError::InvalidArgument(format!("support {kind:?} is not a natural set")));
        }
        if !(cutoff >= 0.0) {
            return Err(SeriesError::InvalidArgument(format!("support cutoff {cutoff} must be nonnegative")));
        }
        Ok(SupportDescriptor { kind, cutoff })
    }

    pub fn finite(values: Vec<f64>, cutoff: f64) -> Self {
        SupportDescriptor { kind: SupportKind::Finite(values), cutoff }
    }

    pub fn enumerate(&self) -> Result<Vec<f64>, SeriesError> {
        self.kind.enumerate(self.cutoff)
    }

    pub fn contains(&self, x: f64) -> bool {
        x <= self.cutoff + MERGE_TOL && self.kind.contains(x)
    }

    pub fn sum_closure(&self, other: &SupportDescriptor) -> SupportDescriptor {
        SupportDescriptor {
            kind: SupportKind::sum_closure(self.kind.clone(), other.kind.clone()),
            cutoff: self.cutoff.min(other.cutoff),
        }
    }

    pub fn with_cutoff(&self, cutoff: f64) -> SupportDescriptor {
        SupportDescriptor { kind: self.kind.clone(), cutoff }
    }
}
