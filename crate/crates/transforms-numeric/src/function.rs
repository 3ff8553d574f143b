use std::fmt;
use std::sync::Arc;

use log_geometry::LogRegion;
use series_core::{Complex64, GenSeries, LogCoord, LogPoint};

use crate::error::TransformError;

/// A value together with an absolute error bound on it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eval {
    pub value: Complex64,
    pub err: f64,
}

impl Eval {
    pub fn exact(value: Complex64) -> Self {
        Eval { value, err: 0.0 }
    }
}

pub type Evaluator = Arc<dyn Fn(LogCoord) -> Eval + Send + Sync>;

/// Upper bounds for |f(w)| depending only on Re w, nondecreasing in Re w.
#[derive(Clone, Debug, PartialEq)]
pub enum GrowthBound {
    /// |f(w)| ≤ Σ c_i e^{α_i Re w} over pairs (α_i, c_i), all α_i ≥ 0.
    Exponents(Vec<(f64, f64)>),
    /// |f(w)| ≤ c·exp(d·e^{Re w / scale}).
    Growth { c: f64, d: f64, scale: f64 },
}

impl GrowthBound {
    pub fn at(&self, re: f64) -> f64 {
        match self {
            GrowthBound::Exponents(v) => v
                .iter()
                .map(|(a, c)| if *a == 0.0 { *c } else { c * (a * re).exp() })
                .sum(),
            GrowthBound::Growth { c, d, scale } => c * (d * (re / scale).exp()).exp(),
        }
    }

    /// The bound satisfied by f∘m_λ.
    pub fn ramified(&self, lambda: f64) -> GrowthBound {
        match self {
            GrowthBound::Exponents(v) => GrowthBound::Exponents(v.iter().map(|(a, c)| (a * lambda, *c)).collect()),
            GrowthBound::Growth { c, d, scale } => GrowthBound::Growth { c: *c, d: *d, scale: scale / lambda },
        }
    }

    fn combine(a: &GrowthBound, ca: f64, b: &GrowthBound, cb: f64) -> Option<GrowthBound> {
        use GrowthBound::*;
        match (a, b) {
            (Exponents(x), Exponents(y)) => Some(Exponents(
                x.iter().map(|(e, c)| (*e, c * ca)).chain(y.iter().map(|(e, c)| (*e, c * cb))).collect(),
            )),
            (Growth { c: c1, d: d1, scale: s1 }, Growth { c: c2, d: d2, scale: s2 }) if s1 == s2 => {
                Some(Growth { c: c1 * ca + c2 * cb, d: d1.max(*d2), scale: *s1 })
            }
            _ => None,
        }
    }
}

/// |f(w)| ≤ c0·e^{α Re w} whenever Re w ≤ edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Flatness {
    pub c0: f64,
    pub alpha: f64,
    pub edge: f64,
}

/// A log-holomorphic function of one variable given by an evaluator.
///
/// The evaluator must be re-entrant; it is called on points of `domain` only.
#[derive(Clone)]
pub struct LogFunction {
    evaluator: Evaluator,
    pub domain: LogRegion,
    pub growth: Option<GrowthBound>,
    pub flatness: Option<Flatness>,
    /// False when evaluation errors are not certified bounds.
    pub certified: bool,
}

impl fmt::Debug for LogFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LogFunction")
            .field("domain", &self.domain)
            .field("growth", &self.growth)
            .field("flatness", &self.flatness)
            .finish_non_exhaustive()
    }
}

impl LogFunction {
    pub fn new(domain: LogRegion, evaluator: impl Fn(LogCoord) -> Eval + Send + Sync + 'static) -> Self {
        LogFunction { evaluator: Arc::new(evaluator), domain, growth: None, flatness: None, certified: true }
    }

    pub fn with_growth(mut self, g: GrowthBound) -> Self {
        self.growth = Some(g);
        self
    }

    pub fn with_flatness(mut self, f: Flatness) -> Self {
        self.flatness = Some(f);
        self
    }

    /// p_α(w) = e^{αw} on the whole plane.
    pub fn power(alpha: f64) -> Self {
        LogFunction::new(LogRegion::disk1(f64::INFINITY), move |w| Eval::exact(w.exp_scaled(alpha)))
            .with_growth(GrowthBound::Exponents(vec![(alpha, 1.0)]))
    }

    /// The log-sum of a one-variable series, on the log-disk of its certified radius.
    pub fn from_series(f: &GenSeries) -> Result<Self, TransformError> {
        if f.nvars() != 1 {
            return Err(TransformError::InvalidArgument(format!("expected a one-variable series, got {}", f.nvars())));
        }
        let r = match f.tail() {
            Some(t) if !t.is_exact() => t.radius[0].ln(),
            _ => f64::INFINITY,
        };
        let mut bound: Vec<(f64, f64)> = f.terms().map(|(k, c)| (k.values()[0], c.norm())).collect();
        let mut certified = true;
        match f.tail() {
            Some(t) if !t.is_exact() => {
                let cut = f.cutoff()[0];
                bound.push((0.0, t.floor));
                if cut.is_finite() {
                    bound.push((cut, t.bound * t.radius[0].powf(-cut)));
                } else {
                    bound.push((0.0, t.bound));
                }
            }
            Some(_) => {}
            None => certified = f.cutoff()[0].is_infinite(),
        }
        let series = f.clone();
        let mut out = LogFunction::new(LogRegion::disk1(r), move |w| match series.eval_logsum(&LogPoint::one(w)) {
            Ok(s) if s.certified => Eval { value: s.value, err: s.error },
            Ok(s) => Eval { value: s.value, err: 0.0 },
            Err(_) => Eval { value: Complex64::new(f64::NAN, f64::NAN), err: f64::INFINITY },
        })
        .with_growth(GrowthBound::Exponents(bound));
        out.certified = certified;
        Ok(out)
    }

    pub fn eval(&self, w: LogCoord) -> Eval {
        (self.evaluator)(w)
    }

    pub fn eval_at(&self, w: Complex64) -> Eval {
        (self.evaluator)(LogCoord::Finite(w))
    }

    /// f(−∞).
    pub fn at_origin(&self) -> Complex64 {
        self.eval(LogCoord::NegInf).value
    }

    /// a·f + b·g on the intersection of the domains.
    pub fn linear(a: Complex64, f: &LogFunction, b: Complex64, g: &LogFunction) -> LogFunction {
        let (fe, ge) = (f.evaluator.clone(), g.evaluator.clone());
        let growth = match (&f.growth, &g.growth) {
            (Some(x), Some(y)) => GrowthBound::combine(x, a.norm(), y, b.norm()),
            _ => None,
        };
        let flatness = match (f.flat_bound(), g.flat_bound()) {
            (Some(x), Some(y)) => Some(Flatness {
                c0: a.norm() * x.c0 + b.norm() * y.c0,
                alpha: x.alpha.min(y.alpha),
                edge: x.edge.min(y.edge).min(0.0),
            }),
            _ => None,
        };
        LogFunction {
            evaluator: Arc::new(move |w| {
                let (x, y) = (fe(w), ge(w));
                Eval { value: a * x.value + b * y.value, err: a.norm() * x.err + b.norm() * y.err }
            }),
            domain: LogRegion::Intersect(vec![f.domain.clone(), g.domain.clone()]),
            growth,
            flatness,
            certified: f.certified && g.certified,
        }
    }

    /// f∘m_λ, that is w ↦ f(λw).
    pub fn ramified(&self, lambda: f64) -> Result<LogFunction, TransformError> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(TransformError::InvalidArgument(format!("ramification exponent {lambda} must be positive")));
        }
        let domain = self.domain.scaled_preimage(lambda).ok_or_else(|| {
            TransformError::InvalidArgument(format!("domain {:?} cannot be rescaled", self.domain))
        })?;
        let e = self.evaluator.clone();
        Ok(LogFunction {
            evaluator: Arc::new(move |w| e(w.scale(lambda))),
            domain,
            growth: self.growth.as_ref().map(|g| g.ramified(lambda)),
            flatness: self.flatness.map(|f| Flatness { c0: f.c0, alpha: f.alpha * lambda, edge: f.edge / lambda }),
            certified: self.certified,
        })
    }

    /// A flatness bound, declared or derived from an exponent bound with all α > 0.
    pub fn flat_bound(&self) -> Option<Flatness> {
        if let Some(f) = self.flatness {
            return Some(f);
        }
        match &self.growth {
            Some(GrowthBound::Exponents(v)) => exponent_flatness(v.iter().copied()),
            _ => None,
        }
    }

    /// A flatness bound for f − f(−∞); constants do not affect Borel transforms.
    pub fn nonconstant_flatness(&self) -> Option<Flatness> {
        match &self.growth {
            Some(GrowthBound::Exponents(v)) if self.flatness.is_none() => {
                exponent_flatness(v.iter().copied().filter(|(a, _)| *a > 0.0))
            }
            _ => self.flat_bound(),
        }
    }

    /// (sup Re, half-opening) of a one-variable domain around the real axis.
    pub fn sector_shape(&self) -> (f64, f64) {
        shape(&self.domain)
    }
}

fn exponent_flatness(v: impl Iterator<Item = (f64, f64)>) -> Option<Flatness> {
    let v: Vec<(f64, f64)> = v.filter(|(_, c)| *c > 0.0).collect();
    if v.is_empty() {
        return Some(Flatness { c0: 0.0, alpha: 1.0, edge: f64::INFINITY });
    }
    let amin = v.iter().map(|(a, _)| *a).fold(f64::INFINITY, f64::min);
    if amin <= 0.0 {
        return None;
    }
    // For Re w ≤ 0 every e^{(α−α_min) Re w} ≤ 1.
    Some(Flatness { c0: v.iter().map(|(_, c)| c).sum(), alpha: amin, edge: 0.0 })
}

fn shape(r: &LogRegion) -> (f64, f64) {
    match r {
        LogRegion::Disk { r } if r.len() == 1 => (r[0], f64::INFINITY),
        LogRegion::Sector { d, r, theta } => (*r, (theta - d.abs()).max(0.0)),
        LogRegion::Line { .. } => (f64::INFINITY, 0.0),
        LogRegion::Intersect(v) => v.iter().map(shape).fold((f64::INFINITY, f64::INFINITY), |a, b| (a.0.min(b.0), a.1.min(b.1))),
        LogRegion::Union(v) => v.first().map_or((f64::NEG_INFINITY, 0.0), shape),
        _ => (f64::NEG_INFINITY, 0.0),
    }
}
