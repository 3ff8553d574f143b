//! The line-based `.gps` text format.
//!
//! ```text
//! gps 1 vars=1 yvars=0
//! # comment
//! support 1 logint cutoff=log(1000)
//! term log(2) 0.25 0
//! tail r=exp(-2) bound=0.001
//! growth c=1 d=0
//! ```
//!
//! Variables are numbered from 1. Exponents may be decimal, `log(n)` or
//! `p/q`; other reals additionally accept `exp(x)`. `fill <re> <im>` gives
//! every support element up to the cutoff the same coefficient (one
//! variable only). `tail exact` declares that no terms were omitted.

use num_complex::Complex64;

use crate::error::SeriesError;
use crate::exponent::{ExpTag, ExponentKey, MultiIndex};
use crate::mixed::{MixedKey, MixedSeries};
use crate::series::{GenSeries, TailBound};
use crate::support::{SupportDescriptor, SupportKind};

/// Borel-sum growth certificate |f(w)| ≤ C·e^{D e^{Re w}}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthLine {
    pub c: f64,
    pub d: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TailLine {
    Exact,
    Bound { r: f64, bound: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum SupportLine {
    Finite,
    Arith(f64),
    LogInt,
    SumClosure,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GpsDocument {
    pub vars: usize,
    pub yvars: usize,
    pub supports: Vec<Option<(SupportLine, Option<f64>)>>,
    pub terms: Vec<(Vec<ExponentKey>, Vec<u32>, Complex64)>,
    pub fill: Option<Complex64>,
    pub tail: Option<TailLine>,
    pub growth: Option<GrowthLine>,
}

fn perr(line: usize, msg: impl Into<String>) -> SeriesError {
    SeriesError::Parse { line, msg: msg.into() }
}

fn inner<'a>(tok: &'a str, head: &str) -> Option<&'a str> {
    tok.strip_prefix(head)?.strip_suffix(')')
}

/// Parses an exponent token, keeping symbolic tags.
pub fn parse_exponent(tok: &str) -> Option<ExponentKey> {
    if let Some(n) = inner(tok, "log(") {
        let n: u64 = n.trim().parse().ok()?;
        if n == 0 {
            return None;
        }
        return ExponentKey::tagged(ExpTag::LogInt(n));
    }
    if let Some((p, q)) = tok.split_once('/') {
        let tag = ExpTag::rational(p.trim().parse().ok()?, q.trim().parse().ok()?)?;
        return ExponentKey::tagged(tag);
    }
    let v: f64 = tok.parse().ok()?;
    if v.fract() == 0.0 && v.abs() < 1e15 {
        return ExponentKey::tagged(ExpTag::rational(v as i64, 1)?);
    }
    ExponentKey::try_new(v)
}

/// Parses a real token: decimal, `p/q`, `log(n)` or `exp(x)`.
pub fn parse_real(tok: &str) -> Option<f64> {
    if let Some(x) = inner(tok, "exp(") {
        return parse_real(x.trim()).map(f64::exp);
    }
    if let Some(n) = inner(tok, "log(") {
        return parse_real(n.trim()).filter(|v| *v > 0.0).map(f64::ln);
    }
    if let Some((p, q)) = tok.split_once('/') {
        let (p, q): (f64, f64) = (p.trim().parse().ok()?, q.trim().parse().ok()?);
        return if q == 0.0 { None } else { Some(p / q) };
    }
    tok.parse().ok()
}

fn key_value<'a>(line: usize, tok: &'a str, key: &str) -> Result<&'a str, SeriesError> {
    tok.strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| perr(line, format!("expected `{key}=<value>`, found `{tok}`")))
}

fn real_kv(line: usize, tok: &str, key: &str) -> Result<f64, SeriesError> {
    let v = key_value(line, tok, key)?;
    parse_real(v).ok_or_else(|| perr(line, format!("invalid number `{v}`")))
}

pub fn parse_gps(text: &str) -> Result<GpsDocument, SeriesError> {
    let mut doc: Option<GpsDocument> = None;
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        let Some(d) = doc.as_mut() else {
            if toks.len() != 4 || toks[0] != "gps" || toks[1] != "1" {
                return Err(perr(ln, "expected header `gps 1 vars=<m> yvars=<n>`"));
            }
            let m = key_value(ln, toks[2], "vars")?.parse().map_err(|_| perr(ln, "invalid vars"))?;
            let n = key_value(ln, toks[3], "yvars")?.parse().map_err(|_| perr(ln, "invalid yvars"))?;
            doc = Some(GpsDocument {
                vars: m,
                yvars: n,
                supports: vec![None; m],
                terms: Vec::new(),
                fill: None,
                tail: None,
                growth: None,
            });
            continue;
        };
        match toks[0] {
            "support" => {
                if toks.len() < 3 || toks.len() > 4 {
                    return Err(perr(ln, "expected `support <var> <kind> [cutoff=<real>]`"));
                }
                let var: usize = toks[1].parse().map_err(|_| perr(ln, format!("invalid variable index `{}`", toks[1])))?;
                if var == 0 || var > d.vars {
                    return Err(perr(ln, format!("variable index {var} out of range 1..={}", d.vars)));
                }
                let kind = match toks[2] {
                    "finite" => SupportLine::Finite,
                    "logint" => SupportLine::LogInt,
                    "sumclosure" => SupportLine::SumClosure,
                    k => match k.strip_prefix("arith:").and_then(parse_real) {
                        Some(step) if step > 0.0 => SupportLine::Arith(step),
                        _ => return Err(perr(ln, format!("unknown support kind `{k}`"))),
                    },
                };
                let cutoff = match toks.get(3) {
                    Some(t) => Some(real_kv(ln, t, "cutoff")?),
                    None => None,
                };
                if cutoff.is_some_and(|c| !(c >= 0.0)) {
                    return Err(perr(ln, "cutoff must be nonnegative"));
                }
                if d.supports[var - 1].is_some() {
                    return Err(perr(ln, format!("duplicate support for variable {var}")));
                }
                d.supports[var - 1] = Some((kind, cutoff));
            }
            "term" => {
                let want = 1 + d.vars + d.yvars + 2;
                if toks.len() != want {
                    return Err(perr(ln, format!("term needs {} fields, found {}", want - 1, toks.len() - 1)));
                }
                let mut xs = Vec::with_capacity(d.vars);
                for t in &toks[1..=d.vars] {
                    xs.push(parse_exponent(t).ok_or_else(|| perr(ln, format!("invalid exponent `{t}`")))?);
                }
                let mut ys = Vec::with_capacity(d.yvars);
                for t in &toks[1 + d.vars..1 + d.vars + d.yvars] {
                    ys.push(t.parse::<u32>().map_err(|_| perr(ln, format!("invalid Y degree `{t}`")))?);
                }
                let re = parse_real(toks[want - 2]).ok_or_else(|| perr(ln, "invalid real part"))?;
                let im = parse_real(toks[want - 1]).ok_or_else(|| perr(ln, "invalid imaginary part"))?;
                d.terms.push((xs, ys, Complex64::new(re, im)));
            }
            "fill" => {
                if toks.len() != 3 {
                    return Err(perr(ln, "expected `fill <re> <im>`"));
                }
                if d.vars != 1 || d.yvars != 0 {
                    return Err(perr(ln, "fill requires vars=1 yvars=0"));
                }
                let re = parse_real(toks[1]).ok_or_else(|| perr(ln, "invalid real part"))?;
                let im = parse_real(toks[2]).ok_or_else(|| perr(ln, "invalid imaginary part"))?;
                d.fill = Some(Complex64::new(re, im));
            }
            "tail" => {
                d.tail = Some(match toks.as_slice() {
                    [_, "exact"] => TailLine::Exact,
                    [_, r, b] => TailLine::Bound { r: real_kv(ln, r, "r")?, bound: real_kv(ln, b, "bound")? },
                    _ => return Err(perr(ln, "expected `tail r=<real> bound=<real>` or `tail exact`")),
                });
            }
            "growth" => {
                if toks.len() != 3 {
                    return Err(perr(ln, "expected `growth c=<real> d=<real>`"));
                }
                d.growth = Some(GrowthLine { c: real_kv(ln, toks[1], "c")?, d: real_kv(ln, toks[2], "d")? });
            }
            other => return Err(perr(ln, format!("unknown directive `{other}`"))),
        }
    }
    doc.ok_or_else(|| perr(0, "missing header"))
}

impl GpsDocument {
    fn descriptors(&self) -> Result<Vec<SupportDescriptor>, SeriesError> {
        (0..self.vars)
            .map(|i| {
                let mut exps: Vec<f64> = self.terms.iter().map(|(x, _, _)| x[i].value()).collect();
                let max = exps.iter().cloned().fold(0.0, f64::max);
                exps.push(0.0);
                let (kind, cutoff) = match &self.supports[i] {
                    None => (SupportKind::Finite(exps), None),
                    Some((SupportLine::Finite, c)) => (SupportKind::Finite(exps), *c),
                    Some((SupportLine::Arith(step), c)) => (SupportKind::Arith { step: *step }, *c),
                    Some((SupportLine::LogInt, c)) => (SupportKind::LogInt, *c),
                    Some((SupportLine::SumClosure, c)) => {
                        let g = SupportKind::Finite(exps);
                        (SupportKind::SumClosure(Box::new(g.clone()), Box::new(g)), *c)
                    }
                };
                let cutoff = cutoff.unwrap_or(max);
                SupportDescriptor::new(kind, cutoff)
            })
            .collect()
    }

    fn tail_bound(&self) -> Option<TailBound> {
        match self.tail {
            Some(TailLine::Exact) => Some(TailBound::exact(self.vars)),
            Some(TailLine::Bound { r, bound }) => Some(TailBound::new(vec![r; self.vars], bound)),
            None => None,
        }
    }

    /// The document as a pure Gevrey series; Y-dependent terms are an error.
    pub fn to_gen_series(&self) -> Result<GenSeries, SeriesError> {
        if self.terms.iter().any(|(_, y, _)| y.iter().any(|&b| b != 0)) {
            return Err(SeriesError::InvalidArgument("document has Y-dependent terms".into()));
        }
        let support = self.descriptors()?;
        let mut terms: Vec<(MultiIndex, Complex64)> =
            self.terms.iter().map(|(x, _, c)| (MultiIndex(x.clone()), *c)).collect();
        if let Some(c) = self.fill {
            for v in support[0].enumerate()? {
                terms.push((MultiIndex(vec![exponent_with_tag(&support[0].kind, v)]), c));
            }
        }
        let wide: Vec<SupportDescriptor> = support.iter().map(|d| d.with_cutoff(f64::MAX)).collect();
        let full = GenSeries::from_keys(self.vars, terms, Some(wide))?.with_tail(self.tail_bound());
        let cutoff: Vec<f64> = support.iter().map(|d| d.cutoff).collect();
        full.truncate(&cutoff)?.with_support(support)
    }

    pub fn to_mixed(&self) -> Result<MixedSeries, SeriesError> {
        let support = self.descriptors()?;
        let xc: Vec<f64> = support.iter().map(|d| d.cutoff).collect();
        let ydeg = self.terms.iter().map(|(_, y, _)| y.iter().sum::<u32>()).max().unwrap_or(0);
        let mut s = MixedSeries::zero(self.vars, self.yvars, xc, ydeg);
        for (x, y, c) in &self.terms {
            s.insert(MixedKey { x: MultiIndex(x.clone()), y: y.clone() }, *c);
        }
        Ok(s)
    }

    pub fn from_gen(f: &GenSeries) -> GpsDocument {
        let supports = f
            .support()
            .iter()
            .map(|d| {
                let line = match &d.kind {
                    SupportKind::Arith { step } => SupportLine::Arith(*step),
                    SupportKind::LogInt => SupportLine::LogInt,
                    _ => SupportLine::Finite,
                };
                Some((line, Some(d.cutoff)))
            })
            .collect();
        let tail = f.tail().and_then(|t| {
            if t.is_exact() {
                Some(TailLine::Exact)
            } else if t.floor == 0.0 && t.radius.windows(2).all(|w| w[0] == w[1]) {
                Some(TailLine::Bound { r: t.radius[0], bound: t.bound })
            } else {
                None
            }
        });
        GpsDocument {
            vars: f.nvars(),
            yvars: 0,
            supports,
            terms: f.terms().map(|(k, c)| (k.0.clone(), Vec::new(), *c)).collect(),
            fill: None,
            tail,
            growth: None,
        }
    }
}

fn exponent_with_tag(kind: &SupportKind, v: f64) -> ExponentKey {
    if let SupportKind::LogInt = kind {
        let n = v.exp().round();
        if let Some(k) = ExponentKey::tagged(ExpTag::LogInt(n as u64)) {
            return k;
        }
    }
    ExponentKey::new(v)
}

pub fn write_gps(doc: &GpsDocument) -> String {
    let mut out = format!("gps 1 vars={} yvars={}\n", doc.vars, doc.yvars);
    for (i, s) in doc.supports.iter().enumerate() {
        if let Some((kind, cutoff)) = s {
            let k = match kind {
                SupportLine::Finite => "finite".to_string(),
                SupportLine::Arith(step) => format!("arith:{step}"),
                SupportLine::LogInt => "logint".to_string(),
                SupportLine::SumClosure => "sumclosure".to_string(),
            };
            match cutoff {
                Some(c) => out.push_str(&format!("support {} {k} cutoff={c}\n", i + 1)),
                None => out.push_str(&format!("support {} {k}\n", i + 1)),
            }
        }
    }
    for (x, y, c) in &doc.terms {
        out.push_str("term");
        for e in x {
            out.push_str(&format!(" {e}"));
        }
        for b in y {
            out.push_str(&format!(" {b}"));
        }
        out.push_str(&format!(" {} {}\n", c.re, c.im));
    }
    if let Some(c) = doc.fill {
        out.push_str(&format!("fill {} {}\n", c.re, c.im));
    }
    match &doc.tail {
        Some(TailLine::Exact) => out.push_str("tail exact\n"),
        Some(TailLine::Bound { r, bound }) => out.push_str(&format!("tail r={r} bound={bound}\n")),
        None => {}
    }
    if let Some(g) = doc.growth {
        out.push_str(&format!("growth c={} d={}\n", g.c, g.d));
    }
    out
}
