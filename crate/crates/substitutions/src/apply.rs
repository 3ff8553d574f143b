use std::collections::HashMap;

use series_core::{Complex64, ExponentKey, MixedKey, MixedSeries, MultiIndex};

use crate::error::SubstError;
use crate::kind::{after_removal, SubstKind, Substitution};

/// Stop expanding a binomial series after this many terms.
const MAX_BINOMIAL_TERMS: usize = 100_000;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// binom(r, i) for real r.
pub fn binom(r: f64, i: usize) -> f64 {
    let mut c = 1.0;
    for k in 0..i {
        c *= (r - k as f64) / (k + 1) as f64;
    }
    c
}

/// (1 + ε)^r truncated where the powers of ε vanish in the jet; ε must have no constant term.
pub fn binomial_series(eps: &MixedSeries, r: f64) -> Result<MixedSeries, SubstError> {
    if eps.constant_term() != Complex64::new(0.0, 0.0) {
        return Err(SubstError::NonNormal("binomial expansion needs ε(0) = 0".into()));
    }
    let mut acc = MixedSeries::one(eps.gevrey(), eps.convergent(), eps.x_cutoff().to_vec(), eps.y_degree_cutoff());
    let mut power = acc.clone();
    for i in 1..MAX_BINOMIAL_TERMS {
        power = power.mul(eps)?;
        if power.is_zero() {
            return Ok(acc);
        }
        let c = binom(r, i);
        if c == 0.0 && r.fract() == 0.0 {
            return Ok(acc);
        }
        acc = acc.add(&power.scale(Complex64::new(c, 0.0)))?;
    }
    Err(SubstError::InfiniteWork(format!("binomial series of exponent {r} did not terminate")))
}

fn monomial(m: usize, n: usize, x: Vec<f64>, y: Vec<u32>, c: Complex64, xc: &[f64], yc: u32) -> MixedSeries {
    MixedSeries::from_terms(m, n, vec![(x, y, c)], xc.to_vec(), yc).expect("valid monomial")
}

/// Image of one Gevrey variable under a substitution of normal form.
enum Image {
    /// a_i + (X')^γ (λ + H) with a_i = 0.
    Monomial { gamma: Vec<f64>, lambda: f64, h: Option<MixedSeries> },
    /// a + ε with ε(0) = 0.
    Shift { a: f64, eps: MixedSeries },
}

struct Target {
    m: usize,
    n: usize,
    xc: Vec<f64>,
    yc: u32,
}

impl Target {
    fn one(&self) -> MixedSeries {
        MixedSeries::one(self.m, self.n, self.xc.clone(), self.yc)
    }

    fn y_var(&self, j: usize) -> MixedSeries {
        MixedSeries::y_var(self.m, self.n, j, self.xc.clone(), self.yc)
    }
}

fn image_pow(img: &Image, alpha: f64, t: &Target) -> Result<MixedSeries, SubstError> {
    if alpha == 0.0 {
        return Ok(t.one());
    }
    match img {
        Image::Monomial { gamma, lambda, h } => {
            if gamma.iter().all(|g| *g == 0.0) {
                return Err(SubstError::InfiniteWork("image exponent γ = 0".into()));
            }
            let x: Vec<f64> = gamma.iter().map(|g| g * alpha).collect();
            let base = monomial(t.m, t.n, x, vec![0; t.n], Complex64::new(lambda.powf(alpha), 0.0), &t.xc, t.yc);
            match h {
                None => Ok(base),
                Some(h) => Ok(base.mul(&binomial_series(&h.scale(Complex64::new(1.0 / lambda, 0.0)), alpha)?)?),
            }
        }
        Image::Shift { a, eps } => {
            let s = binomial_series(&eps.scale(Complex64::new(1.0 / a, 0.0)), alpha)?;
            Ok(s.scale(Complex64::new(a.powf(alpha), 0.0)))
        }
    }
}

/// Σ c Π σ(X_i)^{α_i} Π σ(Y_j)^{β_j} over the terms of F.
fn compose(f: &MixedSeries, x_img: &[Image], y_img: &[MixedSeries], t: &Target) -> Result<MixedSeries, SubstError> {
    let mut cache: HashMap<(usize, u64), MixedSeries> = HashMap::new();
    let mut ycache: HashMap<(usize, u32), MixedSeries> = HashMap::new();
    let mut out = MixedSeries::zero(t.m, t.n, t.xc.clone(), t.yc);
    for (k, c) in f.terms() {
        let mut term = t.one().scale(*c);
        for (i, img) in x_img.iter().enumerate() {
            let a = k.x_value(i);
            if a == 0.0 {
                continue;
            }
            let p = match cache.get(&(i, a.to_bits())) {
                Some(p) => p.clone(),
                None => {
                    let p = image_pow(img, a, t)?;
                    cache.insert((i, a.to_bits()), p.clone());
                    p
                }
            };
            term = term.mul(&p)?;
            if term.is_zero() {
                break;
            }
        }
        for (j, img) in y_img.iter().enumerate() {
            let b = k.y[j];
            if b == 0 || term.is_zero() {
                continue;
            }
            let p = match ycache.get(&(j, b)) {
                Some(p) => p.clone(),
                None => {
                    let p = img.with_cutoffs(t.xc.clone(), t.yc).pow(b)?;
                    ycache.insert((j, b), p.clone());
                    p
                }
            };
            term = term.mul(&p)?;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

fn with_x(k: &MixedKey, x: Vec<ExponentKey>) -> MixedKey {
    MixedKey { x: MultiIndex(x), y: k.y.clone() }
}

/// True when no product of `d + 1` target monomials survives the output cutoffs.
fn degree_closure(targets: &[MixedSeries], d: u32, xc: &[f64], yc: u32) -> Result<bool, SubstError> {
    if d == u32::MAX {
        return Ok(true);
    }
    let (m, n) = (targets[0].gevrey(), targets[0].convergent());
    let mut skeleton = MixedSeries::zero(m, n, xc.to_vec(), yc);
    for t in targets {
        for (k, _) in t.terms() {
            skeleton.insert(k.clone(), one());
        }
    }
    let mut p = MixedSeries::one(m, n, xc.to_vec(), yc);
    for _ in 0..=d {
        p = p.mul(&skeleton)?;
        if p.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

impl Substitution {
    /// Output cutoffs below which σF is determined by the jet of F.
    pub fn output_cutoffs(&self, f: &MixedSeries) -> (Vec<f64>, u32) {
        let xc = f.x_cutoff();
        let yc = f.y_degree_cutoff();
        match &self.kind {
            SubstKind::Permutation { perm } => {
                let mut out = vec![0.0; self.m];
                for (i, &p) in perm.iter().enumerate() {
                    out[p] = xc[i];
                }
                (out, yc)
            }
            SubstKind::Ramification { i, alpha } => {
                let mut out = xc.to_vec();
                out[*i] *= alpha;
                (out, yc)
            }
            SubstKind::RegularBlowUp { i, j, .. } => {
                let mut out = xc.to_vec();
                out[*j] = xc[*j].min(xc[*i]);
                out.remove(*i);
                (out, yc)
            }
            SubstKind::SingularBlowUp { .. } => (xc.to_vec(), yc),
            SubstKind::Translation { a, y_cutoff, .. } => {
                let out = xc.iter().zip(a).filter(|(_, a)| **a == 0.0).map(|(c, _)| *c).collect();
                (out, (*y_cutoff).min(yc))
            }
            SubstKind::Infinitesimal { targets, .. } => {
                let mut out: Vec<f64> = targets[0].x_cutoff().to_vec();
                for t in targets {
                    for (o, c) in out.iter_mut().zip(t.x_cutoff()) {
                        *o = o.min(*c);
                    }
                }
                for (o, c) in out.iter_mut().zip(xc) {
                    *o = o.min(*c);
                }
                let y = targets.iter().map(|t| t.y_degree_cutoff()).min().unwrap_or(yc);
                (out, y)
            }
            SubstKind::Identify { i, j } => {
                let mut out = xc.to_vec();
                out[*j] = xc[*j].min(xc[*i]);
                out.remove(*i);
                (out, yc)
            }
            SubstKind::SetZero { i } => {
                let mut out = xc.to_vec();
                out.remove(*i);
                (out, yc)
            }
        }
    }

    /// σF as a jet below the output cutoffs.
    pub fn apply(&self, f: &MixedSeries) -> Result<MixedSeries, SubstError> {
        if f.gevrey() != self.m || f.convergent() != self.n {
            return Err(SubstError::Arity { m: self.m, n: self.n, got_m: f.gevrey(), got_n: f.convergent() });
        }
        let (m2, n2) = self.target();
        let (xc, yc) = self.output_cutoffs(f);
        let t = Target { m: m2, n: n2, xc: xc.clone(), yc };
        let out = match &self.kind {
            SubstKind::Permutation { perm } => f.map_keys(m2, n2, xc, yc, |k| {
                let mut x = k.x.0.clone();
                for (i, &p) in perm.iter().enumerate() {
                    x[p] = k.x.0[i];
                }
                Some(with_x(k, x))
            }),
            SubstKind::Ramification { i, alpha } => {
                f.map_keys(m2, n2, xc, yc, |k| Some(k.with_x(*i, k.x.get(*i).scale(*alpha))))
            }
            SubstKind::SingularBlowUp { i, j } => {
                f.map_keys(m2, n2, xc, yc, |k| Some(k.with_x(*j, k.x.get(*j).add(k.x.get(*i)))))
            }
            SubstKind::Identify { i, j } => f.map_keys(m2, n2, xc, yc, |k| {
                let merged = k.x.get(*j).add(k.x.get(*i));
                let mut x = k.x.0.clone();
                x[*j] = merged;
                x.remove(*i);
                Some(with_x(k, x))
            }),
            SubstKind::SetZero { i } => f.map_keys(m2, n2, xc, yc, |k| {
                if k.x.get(*i).is_zero() {
                    let mut x = k.x.0.clone();
                    x.remove(*i);
                    Some(with_x(k, x))
                } else {
                    None
                }
            }),
            SubstKind::RegularBlowUp { i, j, lambda } => {
                let x_img: Vec<Image> = (0..self.m)
                    .map(|s| {
                        let mut gamma = vec![0.0; m2];
                        if s == *i {
                            gamma[after_removal(*j, *i)] = 1.0;
                            Image::Monomial { gamma, lambda: *lambda, h: Some(t.y_var(n2 - 1)) }
                        } else {
                            gamma[after_removal(s, *i)] = 1.0;
                            Image::Monomial { gamma, lambda: 1.0, h: None }
                        }
                    })
                    .collect();
                let y_img: Vec<MixedSeries> = (0..self.n).map(|j| t.y_var(j)).collect();
                compose(f, &x_img, &y_img, &t)?
            }
            SubstKind::Translation { a, b, .. } => {
                if b.iter().any(|b| b.norm() > 0.0) && f.y_degree_cutoff() != u32::MAX {
                    return Err(SubstError::InfiniteWork("translating Y needs a jet that is exact in Y".into()));
                }
                let mut x_img = Vec::with_capacity(self.m);
                let (mut kept, mut fresh) = (0, self.n);
                for (i, ai) in a.iter().enumerate() {
                    if *ai == 0.0 {
                        let mut gamma = vec![0.0; m2];
                        gamma[kept] = 1.0;
                        kept += 1;
                        x_img.push(Image::Monomial { gamma, lambda: 1.0, h: None });
                    } else {
                        if f.x_cutoff()[i].is_finite() {
                            return Err(SubstError::InfiniteWork(format!("X_{i} is truncated at {}; translation needs it exact", f.x_cutoff()[i])));
                        }
                        x_img.push(Image::Shift { a: *ai, eps: t.y_var(fresh) });
                        fresh += 1;
                    }
                }
                let y_img: Vec<MixedSeries> = b
                    .iter()
                    .enumerate()
                    .map(|(j, bj)| t.y_var(j).add(&t.one().scale(*bj)))
                    .collect::<Result<_, _>>()?;
                compose(f, &x_img, &y_img, &t)?
            }
            SubstKind::Infinitesimal { targets, .. } => {
                if !degree_closure(targets, f.y_degree_cutoff(), &xc, yc)? {
                    return Err(SubstError::InfiniteWork(format!(
                        "products of {} targets survive the output cutoffs; the Y jet of F is too short",
                        f.y_degree_cutoff().saturating_add(1)
                    )));
                }
                let x_img: Vec<Image> = (0..self.m)
                    .map(|s| {
                        let mut gamma = vec![0.0; m2];
                        gamma[s] = 1.0;
                        Image::Monomial { gamma, lambda: 1.0, h: None }
                    })
                    .collect();
                compose(f, &x_img, targets, &t)?
            }
        };
        Ok(out)
    }
}
