//! Real exponents with tolerant comparison.
//!
//! Two keys are equal when their values differ by at most [`MERGE_TOL`].
//! Tags record a symbolic origin and survive addition where the result
//! stays in the same family (log n + log m = log nm, p/q + r/s).

use std::cmp::Ordering;
use std::fmt;

/// Absolute merge tolerance for exponent values.
pub const MERGE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExpTag {
    /// log(n) for an integer n >= 1.
    LogInt(u64),
    /// num/den in lowest terms, den > 0.
    Rational { num: i64, den: u64 },
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl ExpTag {
    pub fn rational(num: i64, den: u64) -> Option<ExpTag> {
        if den == 0 {
            return None;
        }
        let g = gcd(num.unsigned_abs(), den).max(1);
        Some(ExpTag::Rational { num: num / g as i64, den: den / g })
    }

    pub fn value(self) -> f64 {
        match self {
            ExpTag::LogInt(n) => (n as f64).ln(),
            ExpTag::Rational { num, den } => num as f64 / den as f64,
        }
    }

    fn combine(self, other: ExpTag) -> Option<ExpTag> {
        match (self, other) {
            (ExpTag::LogInt(a), ExpTag::LogInt(b)) => a.checked_mul(b).map(ExpTag::LogInt),
            (ExpTag::Rational { num: a, den: b }, ExpTag::Rational { num: c, den: d }) => {
                let num = a.checked_mul(d as i64)?.checked_add(c.checked_mul(b as i64)?)?;
                ExpTag::rational(num, b.checked_mul(d)?)
            }
            // log 1 = 0 = 0/1 is the only overlap
            (ExpTag::LogInt(1), t) | (t, ExpTag::LogInt(1)) => Some(t),
            (ExpTag::Rational { num: 0, .. }, t) | (t, ExpTag::Rational { num: 0, .. }) => Some(t),
            _ => None,
        }
    }
}

impl fmt::Display for ExpTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpTag::LogInt(n) => write!(f, "log({n})"),
            ExpTag::Rational { num, den: 1 } => write!(f, "{num}"),
            ExpTag::Rational { num, den } => write!(f, "{num}/{den}"),
        }
    }
}

/// A nonnegative real exponent.
#[derive(Clone, Copy, Debug)]
pub struct ExponentKey {
    value: f64,
    tag: Option<ExpTag>,
}

impl ExponentKey {
    pub const ZERO: ExponentKey = ExponentKey { value: 0.0, tag: None };

    /// Panics on negative or non-finite input; use [`ExponentKey::try_new`] otherwise.
    pub fn new(value: f64) -> Self {
        Self::try_new(value).expect("exponent must be finite and nonnegative")
    }

    pub fn try_new(value: f64) -> Option<Self> {
        if !value.is_finite() || value < -MERGE_TOL {
            return None;
        }
        Some(ExponentKey { value: value.max(0.0), tag: None })
    }

    pub fn tagged(tag: ExpTag) -> Option<Self> {
        let mut k = Self::try_new(tag.value())?;
        k.tag = Some(tag);
        Some(k)
    }

    pub fn value(self) -> f64 {
        self.value
    }

    pub fn tag(self) -> Option<ExpTag> {
        self.tag
    }

    pub fn is_zero(self) -> bool {
        self.value <= MERGE_TOL
    }

    pub fn add(self, other: ExponentKey) -> ExponentKey {
        let tag = match (self.tag, other.tag) {
            (Some(a), Some(b)) => a.combine(b),
            (Some(t), None) if other.is_zero() => Some(t),
            (None, Some(t)) if self.is_zero() => Some(t),
            _ => None,
        };
        let value = match tag {
            Some(t) => t.value(),
            None => self.value + other.value,
        };
        ExponentKey { value, tag }
    }

    /// Subtraction clamped at zero; callers check ordering first.
    pub fn sub(self, other: ExponentKey) -> ExponentKey {
        ExponentKey { value: (self.value - other.value).max(0.0), tag: None }
    }

    pub fn scale(self, factor: f64) -> ExponentKey {
        let tag = match (self.tag, factor.fract() == 0.0 && factor.abs() < 1e9) {
            (Some(ExpTag::Rational { num, den }), true) => {
                (num).checked_mul(factor as i64).and_then(|n| ExpTag::rational(n, den))
            }
            (Some(ExpTag::LogInt(n)), true) if factor >= 0.0 => {
                (n as u128).checked_pow(factor as u32).and_then(|v| u64::try_from(v).ok()).map(ExpTag::LogInt)
            }
            _ => None,
        };
        let value = match tag {
            Some(t) => t.value(),
            None => self.value * factor,
        };
        ExponentKey { value: value.max(0.0), tag }
    }
}

impl PartialEq for ExponentKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExponentKey {}

impl PartialOrd for ExponentKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExponentKey {
    fn cmp(&self, other: &Self) -> Ordering {
        if (self.value - other.value).abs() <= MERGE_TOL {
            Ordering::Equal
        } else if self.value < other.value {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl fmt::Display for ExponentKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            Some(t) => write!(f, "{t}"),
            None => write!(f, "{}", self.value),
        }
    }
}

impl From<f64> for ExponentKey {
    fn from(v: f64) -> Self {
        ExponentKey::new(v)
    }
}

/// Exponent multi-index, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<ExponentKey>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![ExponentKey::ZERO; n])
    }

    pub fn from_values(values: &[f64]) -> Option<Self> {
        values.iter().map(|&v| ExponentKey::try_new(v)).collect::<Option<Vec<_>>>().map(MultiIndex)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.0.iter().map(|k| k.value()).collect()
    }

    pub fn total(&self) -> f64 {
        self.0.iter().map(|k| k.value()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|k| k.is_zero())
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a.add(*b)).collect())
    }

    pub fn get(&self, i: usize) -> ExponentKey {
        self.0[i]
    }

    pub fn within(&self, cutoff: &[f64]) -> bool {
        self.0.iter().zip(cutoff).all(|(k, c)| k.value() <= c + MERGE_TOL)
    }

    pub fn without(&self, i: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v.remove(i);
        MultiIndex(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_tolerance() {
        let a = ExponentKey::new(0.5);
        let b = ExponentKey::new(0.5 + 5e-13);
        let c = ExponentKey::new(0.5 + 5e-12);
        assert_eq!(a, b);
        assert!(a < c);
    }

    #[test]
    fn log_tags_multiply() {
        let a = ExponentKey::tagged(ExpTag::LogInt(2)).unwrap();
        let b = ExponentKey::tagged(ExpTag::LogInt(3)).unwrap();
        let s = a.add(b);
        assert_eq!(s.tag(), Some(ExpTag::LogInt(6)));
        assert_eq!(s.value(), 6f64.ln());
    }

    #[test]
    fn rational_tags_add() {
        let a = ExponentKey::tagged(ExpTag::rational(1, 2).unwrap()).unwrap();
        let s = a.add(a);
        assert_eq!(s.tag(), Some(ExpTag::Rational { num: 1, den: 1 }));
        assert_eq!(s.to_string(), "1");
    }

    #[test]
    fn rejects_negative() {
        assert!(ExponentKey::try_new(-0.1).is_none());
        assert!(ExponentKey::try_new(f64::NAN).is_none());
    }
}
