//! Jets of generalized power series in several Gevrey variables.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::SeriesError;
use crate::exponent::{ExponentKey, MultiIndex, MERGE_TOL};
use crate::gamma::{gamma, rgamma};
use crate::logpoint::LogPoint;
use crate::support::{SupportDescriptor, SupportKind};

/// max_{x>0} 1/Γ(x), attained at x ≈ 1.46163.
pub const RGAMMA_MAX: f64 = 1.129_173_885_450_141_3;
/// Location of the minimum of Γ on (0, ∞).
pub const GAMMA_ARGMIN: f64 = 1.461_632_144_968_362_3;

/// Bound on the mass of the unstored terms.
///
/// For every ρ ≤ `radius` componentwise,
/// Σ_{unstored α} |a_α| ρ^α ≤ floor + bound · max_i (ρ_i / radius_i)^{cutoff_i}.
#[derive(Clone, Debug, PartialEq)]
pub struct TailBound {
    pub radius: Vec<f64>,
    pub bound: f64,
    pub floor: f64,
}

impl TailBound {
    pub fn exact(nvars: usize) -> Self {
        TailBound { radius: vec![f64::INFINITY; nvars], bound: 0.0, floor: 0.0 }
    }

    pub fn new(radius: Vec<f64>, bound: f64) -> Self {
        TailBound { radius, bound, floor: 0.0 }
    }

    pub fn is_exact(&self) -> bool {
        self.bound == 0.0 && self.floor == 0.0
    }

    pub fn covers(&self, rho: &[f64]) -> bool {
        self.is_exact() || rho.iter().zip(&self.radius).all(|(p, r)| *p <= r * (1.0 + 1e-12))
    }

    /// Tail mass at ρ, or `None` when ρ lies outside the certified polyradius.
    pub fn at(&self, rho: &[f64], cutoff: &[f64]) -> Option<f64> {
        if self.is_exact() {
            return Some(0.0);
        }
        if !self.covers(rho) {
            return None;
        }
        let mut decay: f64 = 0.0;
        for ((p, r), c) in rho.iter().zip(&self.radius).zip(cutoff) {
            let q = if r.is_infinite() { 0.0 } else { (p / r).min(1.0) };
            decay = decay.max(if *c == 0.0 { 1.0 } else { q.powf(*c) });
        }
        Some(self.floor + self.bound * decay)
    }

    fn scaled(&self, factor: f64) -> TailBound {
        TailBound { radius: self.radius.clone(), bound: self.bound * factor, floor: self.floor * factor }
    }
}

fn common_radius(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x.min(*y)).collect()
}

/// A norm value; `certified` is false when no tail bound covers the radius,
/// in which case `value` is only a lower bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Norm {
    pub value: f64,
    pub certified: bool,
}

/// A log-sum value with an error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogSum {
    pub value: Complex64,
    pub error: f64,
    pub certified: bool,
}

/// Base series together with pending Γ(αλ) weights: `+λ` divides, `−λ` multiplies.
#[derive(Debug)]
struct GammaWeights {
    base: GenSeries,
    lambdas: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct GenSeries {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Complex64>,
    support: Vec<SupportDescriptor>,
    tail: Option<TailBound>,
    weights: Option<Arc<GammaWeights>>,
}

impl PartialEq for GenSeries {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms && self.cutoff() == other.cutoff()
    }
}

fn insert(map: &mut BTreeMap<MultiIndex, Complex64>, key: MultiIndex, c: Complex64) {
    map.entry(key).and_modify(|v| *v += c).or_insert(c);
}

fn prune(map: &mut BTreeMap<MultiIndex, Complex64>) {
    map.retain(|_, v| *v != Complex64::new(0.0, 0.0));
}

fn check_dims(expected: usize, got: usize) -> Result<(), SeriesError> {
    if expected != got {
        return Err(SeriesError::DimensionMismatch { expected, got });
    }
    Ok(())
}

fn merged_support(a: &[SupportDescriptor], b: &[SupportDescriptor]) -> Vec<SupportDescriptor> {
    a.iter().zip(b).map(|(x, y)| x.sum_closure(y)).collect()
}

impl GenSeries {
    fn raw(
        nvars: usize,
        terms: BTreeMap<MultiIndex, Complex64>,
        support: Vec<SupportDescriptor>,
        tail: Option<TailBound>,
    ) -> Self {
        GenSeries { nvars, terms, support, tail, weights: None }
    }

    pub fn zero(nvars: usize) -> Self {
        let support = vec![SupportDescriptor::finite(vec![0.0], f64::INFINITY); nvars];
        Self::raw(nvars, BTreeMap::new(), support, Some(TailBound::exact(nvars)))
    }

    pub fn constant(nvars: usize, c: Complex64) -> Self {
        let mut s = Self::zero(nvars);
        if c != Complex64::new(0.0, 0.0) {
            s.terms.insert(MultiIndex::zero(nvars), c);
        }
        s
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Complex64::new(1.0, 0.0))
    }

    /// c·X^α as an exact jet.
    pub fn monomial(alpha: &[f64], c: Complex64) -> Result<Self, SeriesError> {
        Self::from_terms(alpha.len(), vec![(alpha.to_vec(), c)], None)
    }

    /// Builds a jet from explicit terms.
    ///
    /// With `support = None`, each variable gets the finite support of its
    /// stored exponents and an infinite cutoff, so the jet is exact. Terms
    /// above a declared cutoff are dropped, which leaves the tail unknown.
    pub fn from_terms(
        nvars: usize,
        terms: Vec<(Vec<f64>, Complex64)>,
        support: Option<Vec<SupportDescriptor>>,
    ) -> Result<Self, SeriesError> {
        let mut map = BTreeMap::new();
        for (alpha, c) in &terms {
            check_dims(nvars, alpha.len())?;
            for &a in alpha {
                if !(a.is_finite() && a >= -MERGE_TOL) {
                    return Err(SeriesError::NegativeExponent(a));
                }
            }
            insert(&mut map, MultiIndex::from_values(alpha).expect("validated"), *c);
        }
        Self::from_map(nvars, map, support)
    }

    /// Like [`GenSeries::from_terms`] but keeps exponent tags.
    pub fn from_keys(
        nvars: usize,
        terms: Vec<(MultiIndex, Complex64)>,
        support: Option<Vec<SupportDescriptor>>,
    ) -> Result<Self, SeriesError> {
        let mut map = BTreeMap::new();
        for (k, c) in terms {
            check_dims(nvars, k.len())?;
            insert(&mut map, k, c);
        }
        Self::from_map(nvars, map, support)
    }

    fn from_map(
        nvars: usize,
        mut map: BTreeMap<MultiIndex, Complex64>,
        support: Option<Vec<SupportDescriptor>>,
    ) -> Result<Self, SeriesError> {
        prune(&mut map);
        let support = match support {
            Some(s) => {
                check_dims(nvars, s.len())?;
                for d in &s {
                    if !d.kind.is_natural() || d.kind.dims() != 1 {
                        return Err(SeriesError::InvalidArgument(format!("support {:?} is not a natural 1-d set", d.kind)));
                    }
                }
                s
            }
            None => (0..nvars)
                .map(|i| {
                    let mut vals: Vec<f64> = map.keys().map(|k| k.get(i).value()).collect();
                    vals.push(0.0);
                    SupportDescriptor::finite(vals, f64::INFINITY)
                })
                .collect(),
        };
        let cutoff: Vec<f64> = support.iter().map(|d| d.cutoff).collect();
        let before = map.len();
        map.retain(|k, _| k.within(&cutoff));
        let tail = if map.len() == before { Some(TailBound::exact(nvars)) } else { None };
        for k in map.keys() {
            for (i, d) in support.iter().enumerate() {
                let a = k.get(i).value();
                if !d.kind.contains(a) {
                    return Err(SeriesError::SupportViolation { var: i, exponent: a });
                }
            }
        }
        Ok(Self::raw(nvars, map, support, tail))
    }

    pub fn with_tail(mut self, tail: Option<TailBound>) -> Self {
        self.tail = tail;
        self.weights = None;
        self
    }

    /// Replaces support descriptors without re-validating stored terms.
    pub fn with_support(mut self, support: Vec<SupportDescriptor>) -> Result<Self, SeriesError> {
        check_dims(self.nvars, support.len())?;
        let cutoff: Vec<f64> = support.iter().map(|d| d.cutoff).collect();
        let old = self.cutoff();
        if cutoff.iter().zip(&old).any(|(c, o)| c > &(o + MERGE_TOL)) {
            return Err(SeriesError::InvalidArgument("support cutoff cannot exceed the stored jet cutoff".into()));
        }
        let truncated = self.truncate(&cutoff)?;
        self.terms = truncated.terms;
        self.tail = truncated.tail;
        self.support = support;
        self.weights = None;
        Ok(self)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.terms.iter()
    }

    pub fn term_map(&self) -> &BTreeMap<MultiIndex, Complex64> {
        &self.terms
    }

    pub fn coeff(&self, alpha: &[f64]) -> Complex64 {
        match MultiIndex::from_values(alpha) {
            Some(k) => self.terms.get(&k).copied().unwrap_or_default(),
            None => Complex64::new(0.0, 0.0),
        }
    }

    pub fn constant_term(&self) -> Complex64 {
        self.terms.get(&MultiIndex::zero(self.nvars)).copied().unwrap_or_default()
    }

    pub fn support(&self) -> &[SupportDescriptor] {
        &self.support
    }

    pub fn cutoff(&self) -> Vec<f64> {
        self.support.iter().map(|d| d.cutoff).collect()
    }

    pub fn tail(&self) -> Option<&TailBound> {
        self.tail.as_ref()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im == 0.0)
    }

    /// Checks every structural invariant.
    pub fn validate(&self) -> Result<(), SeriesError> {
        check_dims(self.nvars, self.support.len())?;
        let cutoff = self.cutoff();
        for (k, c) in &self.terms {
            if *c == Complex64::new(0.0, 0.0) {
                return Err(SeriesError::InvalidArgument("stored zero coefficient".into()));
            }
            check_dims(self.nvars, k.len())?;
            for (i, d) in self.support.iter().enumerate() {
                let a = k.get(i).value();
                if a > cutoff[i] + MERGE_TOL || !d.kind.contains(a) {
                    return Err(SeriesError::SupportViolation { var: i, exponent: a });
                }
            }
        }
        if self.support.iter().any(|d| !d.kind.is_natural()) {
            return Err(SeriesError::InvalidArgument("support is not natural".into()));
        }
        Ok(())
    }

    /// Drops terms above `cutoff`, moving their mass into the tail.
    pub fn truncate(&self, cutoff: &[f64]) -> Result<GenSeries, SeriesError> {
        check_dims(self.nvars, cutoff.len())?;
        let cutoff: Vec<f64> = cutoff.iter().zip(self.cutoff()).map(|(a, b)| a.min(b)).collect();
        let radius = match &self.tail {
            Some(t) if t.radius.iter().all(|r| r.is_finite()) => t.radius.clone(),
            _ => vec![1.0; self.nvars],
        };
        let mut dropped = 0.0;
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            if k.within(&cutoff) {
                terms.insert(k.clone(), *c);
            } else {
                dropped += c.norm() * k.0.iter().zip(&radius).map(|(a, r)| r.powf(a.value())).product::<f64>();
            }
        }
        let tail = self.tail.as_ref().map(|t| {
            if dropped == 0.0 {
                t.clone()
            } else {
                TailBound { radius: radius.clone(), bound: t.bound + dropped, floor: t.floor }
            }
        });
        let support = self.support.iter().zip(&cutoff).map(|(d, c)| d.with_cutoff(*c)).collect();
        Ok(Self::raw(self.nvars, terms, support, tail))
    }

    pub fn scale(&self, c: Complex64) -> GenSeries {
        let mut terms: BTreeMap<_, _> = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        prune(&mut terms);
        let tail = self.tail.as_ref().map(|t| t.scaled(c.norm()));
        Self::raw(self.nvars, terms, self.support.clone(), tail)
    }

    pub fn neg(&self) -> GenSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    pub fn add(&self, other: &GenSeries) -> Result<GenSeries, SeriesError> {
        check_dims(self.nvars, other.nvars)?;
        let cutoff: Vec<f64> = self.cutoff().iter().zip(other.cutoff()).map(|(a, b)| a.min(b)).collect();
        let (a, b) = (self.truncate(&cutoff)?, other.truncate(&cutoff)?);
        let mut terms = a.terms.clone();
        for (k, c) in &b.terms {
            insert(&mut terms, k.clone(), *c);
        }
        prune(&mut terms);
        let tail = match (&a.tail, &b.tail) {
            (Some(x), Some(y)) => Some(TailBound {
                radius: common_radius(&x.radius, &y.radius),
                bound: x.bound + y.bound,
                floor: x.floor + y.floor,
            }),
            _ => None,
        };
        let support = merged_support(&a.support, &b.support);
        Ok(Self::raw(self.nvars, terms, support, tail))
    }

    pub fn sub(&self, other: &GenSeries) -> Result<GenSeries, SeriesError> {
        self.add(&other.neg())
    }

    /// Stored-term norm Σ |a_α| r^α, without tail.
    pub fn stored_norm(&self, r: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(k, c)| c.norm() * k.0.iter().zip(r).map(|(a, ri)| if a.is_zero() { 1.0 } else { ri.powf(a.value()) }).product::<f64>())
            .sum()
    }

    /// ‖F‖_r = Σ |a_α| r^α, certified when a tail bound covers r.
    pub fn norm(&self, r: &[f64]) -> Norm {
        let stored = self.stored_norm(r);
        match self.tail.as_ref().and_then(|t| t.at(r, &self.cutoff())) {
            Some(t) => Norm { value: stored + t, certified: true },
            None => Norm { value: stored, certified: false },
        }
    }

    pub fn mul(&self, other: &GenSeries) -> Result<GenSeries, SeriesError> {
        check_dims(self.nvars, other.nvars)?;
        let cutoff: Vec<f64> = self.cutoff().iter().zip(other.cutoff()).map(|(a, b)| a.min(b)).collect();
        let (a, b) = (self.truncate(&cutoff)?, other.truncate(&cutoff)?);
        let radius = match (&a.tail, &b.tail) {
            (Some(x), Some(y)) => {
                let r = common_radius(&x.radius, &y.radius);
                Some(if r.iter().all(|v| v.is_finite()) { r } else if x.is_exact() && y.is_exact() { vec![1.0; self.nvars] } else { r.iter().map(|v| if v.is_finite() { *v } else { 1.0 }).collect() })
            }
            _ => None,
        };
        let mut terms = BTreeMap::new();
        let mut dropped = 0.0;
        let one_var = self.nvars == 1;
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let k = ka.add(kb);
                if k.within(&cutoff) {
                    insert(&mut terms, k, ca * cb);
                } else {
                    if let Some(r) = &radius {
                        dropped += (ca * cb).norm() * k.0.iter().zip(r).map(|(e, ri)| ri.powf(e.value())).product::<f64>();
                    } else if one_var {
                        break;
                    }
                }
            }
        }
        prune(&mut terms);
        let tail = match (&a.tail, &b.tail, radius) {
            (Some(x), Some(y), Some(r)) => {
                if x.is_exact() && y.is_exact() && dropped == 0.0 {
                    Some(TailBound::exact(self.nvars))
                } else {
                    let na = a.stored_norm(&r) + x.floor + x.bound;
                    let nb = b.stored_norm(&r) + y.floor + y.bound;
                    Some(TailBound {
                        radius: r,
                        bound: na * y.bound + x.bound * nb + dropped,
                        floor: na * y.floor + x.floor * nb,
                    })
                }
            }
            _ => None,
        };
        let support = merged_support(&a.support, &b.support);
        Ok(Self::raw(self.nvars, terms, support, tail))
    }

    pub fn pow(&self, n: u32) -> Result<GenSeries, SeriesError> {
        let mut acc = GenSeries::one(self.nvars).with_cutoff_of(self);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    fn with_cutoff_of(mut self, other: &GenSeries) -> GenSeries {
        self.support = self
            .support
            .iter()
            .zip(&other.support)
            .map(|(d, o)| SupportDescriptor { kind: d.kind.clone(), cutoff: o.cutoff })
            .collect();
        self
    }

    /// Minimal total degree over stored terms; +∞ for the zero series.
    pub fn ord(&self) -> f64 {
        self.terms.keys().map(|k| k.total()).fold(f64::INFINITY, f64::min)
    }

    /// Minimal exponent in variable `i`; +∞ for the zero series.
    pub fn ord_i(&self, i: usize) -> f64 {
        self.terms.keys().map(|k| k.get(i).value()).fold(f64::INFINITY, f64::min)
    }

    /// G with F = X_i^γ · G on stored terms.
    pub fn monomial_divide(&self, i: usize, gamma: f64) -> Result<GenSeries, SeriesError> {
        if i >= self.nvars {
            return Err(SeriesError::DimensionMismatch { expected: self.nvars, got: i + 1 });
        }
        if !(gamma >= 0.0) {
            return Err(SeriesError::NegativeExponent(gamma));
        }
        let g = ExponentKey::new(gamma);
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            if k.get(i) < g {
                return Err(SeriesError::MonomialDivision { var: i, gamma, min_exponent: self.ord_i(i) });
            }
            let mut nk = k.clone();
            nk.0[i] = k.get(i).sub(g);
            terms.insert(nk, *c);
        }
        let mut support = self.support.clone();
        let mut vals: Vec<f64> = terms.keys().map(|k: &MultiIndex| k.get(i).value()).collect();
        vals.push(0.0);
        support[i] = SupportDescriptor::finite(vals, (support[i].cutoff - gamma).max(0.0));
        let tail = match &self.tail {
            Some(t) if t.is_exact() => Some(t.clone()),
            Some(t) if t.floor == 0.0 && t.radius[i].is_finite() => {
                Some(TailBound { radius: t.radius.clone(), bound: t.bound / t.radius[i].powf(gamma), floor: 0.0 })
            }
            _ => None,
        };
        Ok(Self::raw(self.nvars, terms, support, tail))
    }

    /// Splits F with F(0) = 0 as Σ_i X_i^{γ_i} F_i; term goes to the lowest i with α_i > 0.
    pub fn split_by_monomials(&self) -> Result<Vec<(f64, GenSeries)>, SeriesError> {
        let c0 = self.constant_term();
        if c0 != Complex64::new(0.0, 0.0) {
            return Err(SeriesError::NonzeroConstantTerm(format!("{c0}")));
        }
        let mut buckets: Vec<BTreeMap<MultiIndex, Complex64>> = vec![BTreeMap::new(); self.nvars];
        for (k, c) in &self.terms {
            let i = (0..self.nvars).find(|&i| !k.get(i).is_zero()).expect("nonconstant term");
            buckets[i].insert(k.clone(), *c);
        }
        let mut out = Vec::with_capacity(self.nvars);
        for (i, b) in buckets.into_iter().enumerate() {
            if b.is_empty() {
                out.push((0.0, GenSeries::zero(self.nvars)));
                continue;
            }
            let piece = Self::raw(self.nvars, b, self.support.clone(), Some(TailBound::exact(self.nvars)));
            let gamma = piece.ord_i(i);
            out.push((gamma, piece.monomial_divide(i, gamma)?));
        }
        Ok(out)
    }

    /// Coefficient factor for the pending weights at exponent α.
    fn weight(lambdas: &[f64], alpha: f64) -> f64 {
        lambdas.iter().fold(1.0, |acc, &l| {
            if l > 0.0 {
                acc * rgamma(alpha * l)
            } else if alpha == 0.0 {
                acc
            } else {
                acc * gamma(-alpha * l)
            }
        })
    }

    fn push_weight(&self, signed: f64) -> GenSeries {
        let (base, mut lambdas) = match &self.weights {
            Some(w) => (w.base.clone(), w.lambdas.clone()),
            None => (self.clone(), Vec::new()),
        };
        let mut base = base;
        if signed > 0.0 {
            base.terms.remove(&MultiIndex::zero(1));
        }
        match lambdas.iter().position(|&l| l == -signed) {
            Some(j) => {
                lambdas.remove(j);
            }
            None => lambdas.push(signed),
        }
        if lambdas.is_empty() {
            return base;
        }
        let mut terms = BTreeMap::new();
        for (k, c) in &base.terms {
            terms.insert(k.clone(), c * Self::weight(&lambdas, k.get(0).value()));
        }
        prune(&mut terms);
        let lambda = signed.abs();
        let tail = match &self.tail {
            Some(t) if t.is_exact() => Some(t.clone()),
            Some(t) if signed > 0.0 => {
                let x = self.support[0].cutoff * lambda;
                let f = if x >= GAMMA_ARGMIN { rgamma(x) } else { RGAMMA_MAX };
                Some(t.scaled(f))
            }
            _ => None,
        };
        GenSeries {
            nvars: 1,
            terms,
            support: self.support.clone(),
            tail,
            weights: Some(Arc::new(GammaWeights { base, lambdas })),
        }
    }

    /// a_α ↦ a_α / Γ(αλ); the constant term maps to 0.
    pub fn formal_borel(&self, lambda: f64) -> Result<GenSeries, SeriesError> {
        self.check_formal(lambda)?;
        Ok(self.push_weight(lambda))
    }

    /// a_α ↦ Γ(αλ) a_α for α > 0; the constant term is kept.
    pub fn formal_laplace(&self, lambda: f64) -> Result<GenSeries, SeriesError> {
        self.check_formal(lambda)?;
        Ok(self.push_weight(-lambda))
    }

    fn check_formal(&self, lambda: f64) -> Result<(), SeriesError> {
        if self.nvars != 1 {
            return Err(SeriesError::NotOneVariable(self.nvars));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(SeriesError::InvalidArgument(format!("λ = {lambda} must be positive")));
        }
        Ok(())
    }

    /// F̄(w) = Σ a_α e^{α·w}, with the tail bound at e^{Re w} as error.
    pub fn eval_logsum(&self, w: &LogPoint) -> Result<LogSum, SeriesError> {
        check_dims(self.nvars, w.dim())?;
        let mut value = Complex64::new(0.0, 0.0);
        for (k, c) in &self.terms {
            value += c * w.monomial(&k.values());
        }
        if w.0.iter().all(|c| c.is_neg_inf()) {
            return Ok(LogSum { value, error: 0.0, certified: true });
        }
        let rho: Vec<f64> = w.re().iter().map(|u| u.exp()).collect();
        Ok(match self.tail.as_ref().and_then(|t| t.at(&rho, &self.cutoff())) {
            Some(e) => LogSum { value, error: e, certified: true },
            None => LogSum { value, error: f64::INFINITY, certified: false },
        })
    }

    /// Substitutes X_i = e^a and returns a series in the remaining variables.
    pub fn restrict_fiber(&self, i: usize, a: crate::logpoint::LogCoord) -> Result<GenSeries, SeriesError> {
        if i >= self.nvars {
            return Err(SeriesError::DimensionMismatch { expected: self.nvars, got: i + 1 });
        }
        let modulus = a.re().exp();
        let radius_i = self.tail.as_ref().map(|t| t.radius[i]);
        let exact = self.tail.as_ref().is_some_and(|t| t.is_exact());
        if !a.is_neg_inf() && !exact {
            match radius_i {
                Some(r) if modulus < r => {}
                Some(r) => return Err(SeriesError::RadiusViolation { var: i, modulus, radius: r }),
                None => return Err(SeriesError::RadiusViolation { var: i, modulus, radius: 0.0 }),
            }
        }
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let z = a.exp_scaled(k.get(i).value());
            insert(&mut terms, k.without(i), c * z);
        }
        prune(&mut terms);
        let mut support = self.support.clone();
        support.remove(i);
        let tail = match &self.tail {
            Some(t) if t.is_exact() => Some(TailBound::exact(self.nvars - 1)),
            Some(t) => {
                let mut rho = t.radius.clone();
                rho[i] = modulus;
                let mass = t.at(&rho, &self.cutoff()).unwrap_or(f64::INFINITY);
                let mut radius = t.radius.clone();
                radius.remove(i);
                Some(TailBound { radius, bound: 0.0, floor: mass })
            }
            None => None,
        };
        Ok(Self::raw(self.nvars - 1, terms, support, tail))
    }

    /// X_i ↦ X_i^factor on exponents.
    pub fn scale_exponents(&self, i: usize, factor: f64) -> Result<GenSeries, SeriesError> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(SeriesError::InvalidArgument(format!("exponent scale {factor} must be positive")));
        }
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut nk = k.clone();
            nk.0[i] = k.get(i).scale(factor);
            insert(&mut terms, nk, *c);
        }
        let mut support = self.support.clone();
        support[i] = SupportDescriptor {
            kind: SupportKind::Scaled { base: Box::new(support[i].kind.clone()), factor },
            cutoff: support[i].cutoff * factor,
        };
        let tail = self.tail.as_ref().map(|t| {
            let mut t = t.clone();
            t.radius[i] = t.radius[i].powf(1.0 / factor);
            t
        });
        Ok(Self::raw(self.nvars, terms, support, tail))
    }

    /// Reorders variables: new variable j is old variable `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> Result<GenSeries, SeriesError> {
        check_dims(self.nvars, perm.len())?;
        let mut seen = vec![false; self.nvars];
        for &p in perm {
            if p >= self.nvars || seen[p] {
                return Err(SeriesError::InvalidArgument(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        let terms = self.terms.iter().map(|(k, c)| (MultiIndex(perm.iter().map(|&p| k.get(p)).collect()), *c)).collect();
        let support = perm.iter().map(|&p| self.support[p].clone()).collect();
        let tail = self.tail.as_ref().map(|t| TailBound { radius: perm.iter().map(|&p| t.radius[p]).collect(), ..t.clone() });
        Ok(Self::raw(self.nvars, terms, support, tail))
    }

    /// Coefficientwise closeness: max |a − b| ≤ tol · max(1, |a|).
    pub fn approx_eq(&self, other: &GenSeries, tol: f64) -> bool {
        if self.nvars != other.nvars {
            return false;
        }
        let keys: std::collections::BTreeSet<&MultiIndex> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|k| {
            let a = self.terms.get(k).copied().unwrap_or_default();
            let b = other.terms.get(k).copied().unwrap_or_default();
            (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0)
        })
    }
}
