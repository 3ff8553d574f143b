//! Mixed series: Gevrey variables X with real exponents and convergent
//! variables Y with integer exponents, stored as a jet.
//!
//! A term X^α Y^β is kept iff α_i ≤ x_cutoff_i for all i and |β| ≤ y_degree_cutoff.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::SeriesError;
use crate::exponent::{ExponentKey, MultiIndex, MERGE_TOL};
use crate::logpoint::{LogCoord, LogPoint};
use crate::series::GenSeries;
use crate::support::SupportDescriptor;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MixedKey {
    pub x: MultiIndex,
    pub y: Vec<u32>,
}

impl MixedKey {
    pub fn new(x: &[f64], y: &[u32]) -> Option<Self> {
        Some(MixedKey { x: MultiIndex::from_values(x)?, y: y.to_vec() })
    }

    pub fn y_degree(&self) -> u32 {
        self.y.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.iter().all(|&b| b == 0)
    }

    pub fn add(&self, other: &MixedKey) -> MixedKey {
        MixedKey { x: self.x.add(&other.x), y: self.y.iter().zip(&other.y).map(|(a, b)| a + b).collect() }
    }
}

#[derive(Clone, Debug)]
pub struct MixedSeries {
    m: usize,
    n: usize,
    jet: BTreeMap<MixedKey, Complex64>,
    x_cutoff: Vec<f64>,
    y_degree_cutoff: u32,
}

impl PartialEq for MixedSeries {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.n == other.n && self.jet == other.jet
    }
}

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

impl MixedSeries {
    pub fn zero(m: usize, n: usize, x_cutoff: Vec<f64>, y_degree_cutoff: u32) -> Self {
        assert_eq!(x_cutoff.len(), m, "one X cutoff per Gevrey variable");
        MixedSeries { m, n, jet: BTreeMap::new(), x_cutoff, y_degree_cutoff }
    }

    pub fn constant(m: usize, n: usize, x_cutoff: Vec<f64>, y_degree_cutoff: u32, c: Complex64) -> Self {
        let mut s = Self::zero(m, n, x_cutoff, y_degree_cutoff);
        s.insert(MixedKey { x: MultiIndex::zero(m), y: vec![0; n] }, c);
        s
    }

    pub fn one(m: usize, n: usize, x_cutoff: Vec<f64>, y_degree_cutoff: u32) -> Self {
        Self::constant(m, n, x_cutoff, y_degree_cutoff, Complex64::new(1.0, 0.0))
    }

    pub fn from_terms(
        m: usize,
        n: usize,
        terms: Vec<(Vec<f64>, Vec<u32>, Complex64)>,
        x_cutoff: Vec<f64>,
        y_degree_cutoff: u32,
    ) -> Result<Self, SeriesError> {
        if x_cutoff.len() != m {
            return Err(SeriesError::DimensionMismatch { expected: m, got: x_cutoff.len() });
        }
        let mut s = Self::zero(m, n, x_cutoff, y_degree_cutoff);
        for (x, y, c) in terms {
            if x.len() != m {
                return Err(SeriesError::DimensionMismatch { expected: m, got: x.len() });
            }
            if y.len() != n {
                return Err(SeriesError::DimensionMismatch { expected: n, got: y.len() });
            }
            let key = MixedKey::new(&x, &y).ok_or_else(|| SeriesError::NegativeExponent(x.iter().cloned().fold(0.0, f64::min)))?;
            s.insert(key, c);
        }
        s.prune();
        Ok(s)
    }

    /// X_i as a series.
    pub fn x_var(m: usize, n: usize, i: usize, x_cutoff: Vec<f64>, y_degree_cutoff: u32) -> Self {
        let mut x = vec![0.0; m];
        x[i] = 1.0;
        Self::from_terms(m, n, vec![(x, vec![0; n], Complex64::new(1.0, 0.0))], x_cutoff, y_degree_cutoff).expect("valid monomial")
    }

    /// Y_j as a series.
    pub fn y_var(m: usize, n: usize, j: usize, x_cutoff: Vec<f64>, y_degree_cutoff: u32) -> Self {
        let mut y = vec![0; n];
        y[j] = 1;
        Self::from_terms(m, n, vec![(vec![0.0; m], y, Complex64::new(1.0, 0.0))], x_cutoff, y_degree_cutoff).expect("valid monomial")
    }

    /// Embeds a pure-X series with no Y dependence.
    pub fn from_gen(f: &GenSeries, n: usize, y_degree_cutoff: u32) -> Self {
        let mut s = Self::zero(f.nvars(), n, f.cutoff(), y_degree_cutoff);
        for (k, c) in f.terms() {
            s.insert(MixedKey { x: k.clone(), y: vec![0; n] }, *c);
        }
        s
    }

    fn admits(&self, key: &MixedKey) -> bool {
        key.x.within(&self.x_cutoff) && key.y_degree() <= self.y_degree_cutoff
    }

    /// Adds c to the coefficient of `key`; silently ignored above the cutoffs.
    pub fn insert(&mut self, key: MixedKey, c: Complex64) {
        if self.admits(&key) {
            self.jet.entry(key).and_modify(|v| *v += c).or_insert(c);
        }
    }

    fn prune(&mut self) {
        self.jet.retain(|_, v| *v != czero());
    }

    pub fn gevrey(&self) -> usize {
        self.m
    }

    pub fn convergent(&self) -> usize {
        self.n
    }

    pub fn x_cutoff(&self) -> &[f64] {
        &self.x_cutoff
    }

    pub fn y_degree_cutoff(&self) -> u32 {
        self.y_degree_cutoff
    }

    pub fn len(&self) -> usize {
        self.jet.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jet.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.jet.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.jet.values().all(|c| c.im == 0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MixedKey, &Complex64)> {
        self.jet.iter()
    }

    pub fn coeff(&self, x: &[f64], y: &[u32]) -> Complex64 {
        MixedKey::new(x, y).and_then(|k| self.jet.get(&k).copied()).unwrap_or_default()
    }

    pub fn constant_term(&self) -> Complex64 {
        self.jet.get(&MixedKey { x: MultiIndex::zero(self.m), y: vec![0; self.n] }).copied().unwrap_or_default()
    }

    /// Same jet with smaller cutoffs.
    pub fn truncate(&self, x_cutoff: &[f64], y_degree_cutoff: u32) -> MixedSeries {
        let xc: Vec<f64> = self.x_cutoff.iter().zip(x_cutoff).map(|(a, b)| a.min(*b)).collect();
        let mut s = Self::zero(self.m, self.n, xc, y_degree_cutoff.min(self.y_degree_cutoff));
        for (k, c) in &self.jet {
            s.insert(k.clone(), *c);
        }
        s
    }

    /// Same terms with new cutoffs; terms above them are dropped.
    pub fn with_cutoffs(&self, x_cutoff: Vec<f64>, y_degree_cutoff: u32) -> MixedSeries {
        let mut s = Self::zero(self.m, self.n, x_cutoff, y_degree_cutoff);
        for (k, c) in &self.jet {
            s.insert(k.clone(), *c);
        }
        s
    }

    fn check(&self, other: &MixedSeries) -> Result<(), SeriesError> {
        if self.m != other.m {
            return Err(SeriesError::DimensionMismatch { expected: self.m, got: other.m });
        }
        if self.n != other.n {
            return Err(SeriesError::DimensionMismatch { expected: self.n, got: other.n });
        }
        Ok(())
    }

    fn common_cutoffs(&self, other: &MixedSeries) -> (Vec<f64>, u32) {
        (
            self.x_cutoff.iter().zip(&other.x_cutoff).map(|(a, b)| a.min(*b)).collect(),
            self.y_degree_cutoff.min(other.y_degree_cutoff),
        )
    }

    pub fn add(&self, other: &MixedSeries) -> Result<MixedSeries, SeriesError> {
        self.check(other)?;
        let (xc, yc) = self.common_cutoffs(other);
        let mut s = Self::zero(self.m, self.n, xc, yc);
        for (k, c) in self.jet.iter().chain(other.jet.iter()) {
            s.insert(k.clone(), *c);
        }
        s.prune();
        Ok(s)
    }

    pub fn scale(&self, c: Complex64) -> MixedSeries {
        let mut s = self.clone();
        for v in s.jet.values_mut() {
            *v *= c;
        }
        s.prune();
        s
    }

    pub fn neg(&self) -> MixedSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    pub fn sub(&self, other: &MixedSeries) -> Result<MixedSeries, SeriesError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MixedSeries) -> Result<MixedSeries, SeriesError> {
        self.check(other)?;
        let (xc, yc) = self.common_cutoffs(other);
        let mut s = Self::zero(self.m, self.n, xc, yc);
        for (ka, ca) in &self.jet {
            for (kb, cb) in &other.jet {
                s.insert(ka.add(kb), ca * cb);
            }
        }
        s.prune();
        Ok(s)
    }

    pub fn pow(&self, k: u32) -> Result<MixedSeries, SeriesError> {
        let mut acc = Self::one(self.m, self.n, self.x_cutoff.clone(), self.y_degree_cutoff);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplicative inverse by the geometric series in (F − c)/c.
    pub fn invert(&self) -> Result<MixedSeries, SeriesError> {
        let c = self.constant_term();
        if c == czero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let mut e = self.scale(-c.inv());
        e.jet.remove(&MixedKey { x: MultiIndex::zero(self.m), y: vec![0; self.n] });
        let one = Self::one(self.m, self.n, self.x_cutoff.clone(), self.y_degree_cutoff);
        let mut acc = one.clone();
        let mut power = one;
        for _ in 0..100_000 {
            power = power.mul(&e)?;
            if power.is_zero() {
                return Ok(acc.scale(c.inv()));
            }
            acc = acc.add(&power)?;
        }
        Err(SeriesError::InvalidArgument("geometric series did not terminate".into()))
    }

    /// Minimal total X degree over stored terms.
    pub fn ord_x(&self) -> f64 {
        self.jet.keys().map(|k| k.x.total()).fold(f64::INFINITY, f64::min)
    }

    /// The coefficient F_β(X) of Y^β.
    pub fn y_coeff(&self, beta: &[u32]) -> GenSeries {
        let terms: Vec<(MultiIndex, Complex64)> =
            self.jet.iter().filter(|(k, _)| k.y == beta).map(|(k, c)| (k.x.clone(), *c)).collect();
        let support = self
            .x_cutoff
            .iter()
            .enumerate()
            .map(|(i, cut)| {
                let mut vals: Vec<f64> = terms.iter().map(|(k, _)| k.get(i).value()).collect();
                vals.push(0.0);
                SupportDescriptor::finite(vals, *cut)
            })
            .collect();
        GenSeries::from_keys(self.m, terms, Some(support)).expect("stored terms satisfy their own support")
    }

    /// Σ a e^{α·w} y^β.
    pub fn eval(&self, w: &LogPoint, y: &[Complex64]) -> Result<Complex64, SeriesError> {
        if w.dim() != self.m {
            return Err(SeriesError::DimensionMismatch { expected: self.m, got: w.dim() });
        }
        if y.len() != self.n {
            return Err(SeriesError::DimensionMismatch { expected: self.n, got: y.len() });
        }
        let mut acc = czero();
        for (k, c) in &self.jet {
            let mut t = c * w.monomial(&k.x.values());
            for (yj, &b) in y.iter().zip(&k.y) {
                t *= yj.powu(b);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes X_i = e^a; the result has one Gevrey variable fewer.
    pub fn restrict_fiber(&self, i: usize, a: LogCoord) -> Result<MixedSeries, SeriesError> {
        if i >= self.m {
            return Err(SeriesError::DimensionMismatch { expected: self.m, got: i + 1 });
        }
        let mut xc = self.x_cutoff.clone();
        xc.remove(i);
        let mut s = Self::zero(self.m - 1, self.n, xc, self.y_degree_cutoff);
        for (k, c) in &self.jet {
            let z = a.exp_scaled(k.x.get(i).value());
            s.insert(MixedKey { x: k.x.without(i), y: k.y.clone() }, c * z);
        }
        s.prune();
        Ok(s)
    }

    /// X_i = 0 with the variable removed.
    pub fn set_x_zero(&self, i: usize) -> Result<MixedSeries, SeriesError> {
        self.restrict_fiber(i, LogCoord::NegInf)
    }

    /// Y_j = 0 with the variable removed.
    pub fn set_y_zero(&self, j: usize) -> Result<MixedSeries, SeriesError> {
        if j >= self.n {
            return Err(SeriesError::DimensionMismatch { expected: self.n, got: j + 1 });
        }
        let mut s = Self::zero(self.m, self.n - 1, self.x_cutoff.clone(), self.y_degree_cutoff);
        for (k, c) in &self.jet {
            if k.y[j] == 0 {
                let mut y = k.y.clone();
                y.remove(j);
                s.insert(MixedKey { x: k.x.clone(), y }, *c);
            }
        }
        Ok(s)
    }

    /// Rebuilds the jet under a key map; keys mapped to `None` are dropped.
    pub fn map_keys(
        &self,
        m: usize,
        n: usize,
        x_cutoff: Vec<f64>,
        y_degree_cutoff: u32,
        f: impl Fn(&MixedKey) -> Option<MixedKey>,
    ) -> MixedSeries {
        let mut s = Self::zero(m, n, x_cutoff, y_degree_cutoff);
        for (k, c) in &self.jet {
            if let Some(nk) = f(k) {
                s.insert(nk, *c);
            }
        }
        s.prune();
        s
    }

    /// max over keys of |a − b| / max(1, |a|, |b|).
    pub fn max_rel_diff(&self, other: &MixedSeries) -> f64 {
        let keys: std::collections::BTreeSet<&MixedKey> = self.jet.keys().chain(other.jet.keys()).collect();
        keys.into_iter()
            .map(|k| {
                let a = self.jet.get(k).copied().unwrap_or_default();
                let b = other.jet.get(k).copied().unwrap_or_default();
                (a - b).norm() / a.norm().max(b.norm()).max(1.0)
            })
            .fold(0.0, f64::max)
    }

    /// Σ |a| r^α s^β over stored terms.
    pub fn stored_norm(&self, r: &[f64], s: &[f64]) -> f64 {
        self.jet
            .iter()
            .map(|(k, c)| {
                let xr: f64 = k.x.0.iter().zip(r).map(|(a, ri)| if a.is_zero() { 1.0 } else { ri.powf(a.value()) }).product();
                let ys: f64 = k.y.iter().zip(s).map(|(&b, si)| si.powi(b as i32)).product();
                c.norm() * xr * ys
            })
            .sum()
    }

    /// Smallest positive X exponent appearing in variable i, if any.
    pub fn min_positive_x(&self, i: usize) -> Option<f64> {
        self.jet
            .keys()
            .map(|k| k.x.get(i).value())
            .filter(|&a| a > MERGE_TOL)
            .fold(None, |acc: Option<f64>, a| Some(acc.map_or(a, |b| b.min(a))))
    }
}

impl From<&MixedSeries> for Vec<(Vec<f64>, Vec<u32>, Complex64)> {
    fn from(s: &MixedSeries) -> Self {
        s.jet.iter().map(|(k, c)| (k.x.values(), k.y.clone(), *c)).collect()
    }
}

impl MixedKey {
    pub fn x_value(&self, i: usize) -> f64 {
        self.x.get(i).value()
    }

    pub fn with_x(&self, i: usize, v: ExponentKey) -> MixedKey {
        let mut k = self.clone();
        k.x.0[i] = v;
        k
    }
}
