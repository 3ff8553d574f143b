//! Points of the logarithmic chart, where z = e^w and the origin is w = −∞.

use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LogCoord {
    NegInf,
    Finite(Complex64),
}

impl LogCoord {
    pub fn real(u: f64) -> Self {
        if u == f64::NEG_INFINITY {
            LogCoord::NegInf
        } else {
            LogCoord::Finite(Complex64::new(u, 0.0))
        }
    }

    pub fn new(u: f64, v: f64) -> Self {
        if u == f64::NEG_INFINITY {
            LogCoord::NegInf
        } else {
            LogCoord::Finite(Complex64::new(u, v))
        }
    }

    pub fn re(self) -> f64 {
        match self {
            LogCoord::NegInf => f64::NEG_INFINITY,
            LogCoord::Finite(w) => w.re,
        }
    }

    /// Im(−∞) = 0.
    pub fn im(self) -> f64 {
        match self {
            LogCoord::NegInf => 0.0,
            LogCoord::Finite(w) => w.im,
        }
    }

    pub fn is_neg_inf(self) -> bool {
        matches!(self, LogCoord::NegInf)
    }

    /// e^w, with e^{−∞} = 0.
    pub fn exp(self) -> Complex64 {
        match self {
            LogCoord::NegInf => Complex64::new(0.0, 0.0),
            LogCoord::Finite(w) => w.exp(),
        }
    }

    /// e^{αw} on the principal sheet; α = 0 gives 1 even at −∞.
    pub fn exp_scaled(self, alpha: f64) -> Complex64 {
        if alpha == 0.0 {
            return Complex64::new(1.0, 0.0);
        }
        match self {
            LogCoord::NegInf => Complex64::new(0.0, 0.0),
            LogCoord::Finite(w) => (w * alpha).exp(),
        }
    }

    /// w + t for real t; −∞ is fixed.
    pub fn shift(self, t: f64) -> Self {
        match self {
            LogCoord::NegInf => LogCoord::NegInf,
            LogCoord::Finite(w) => LogCoord::Finite(w + t),
        }
    }

    pub fn scale(self, factor: f64) -> Self {
        match self {
            LogCoord::NegInf => LogCoord::NegInf,
            LogCoord::Finite(w) => LogCoord::Finite(w * factor),
        }
    }
}

impl From<Complex64> for LogCoord {
    fn from(w: Complex64) -> Self {
        LogCoord::Finite(w)
    }
}

impl From<f64> for LogCoord {
    fn from(u: f64) -> Self {
        LogCoord::real(u)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LogPoint(pub Vec<LogCoord>);

impl LogPoint {
    pub fn one(c: impl Into<LogCoord>) -> Self {
        LogPoint(vec![c.into()])
    }

    pub fn reals(us: &[f64]) -> Self {
        LogPoint(us.iter().map(|&u| LogCoord::real(u)).collect())
    }

    pub fn origin(n: usize) -> Self {
        LogPoint(vec![LogCoord::NegInf; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn re(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.re()).collect()
    }

    pub fn im(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.im()).collect()
    }

    pub fn exp(&self) -> Vec<Complex64> {
        self.0.iter().map(|c| c.exp()).collect()
    }

    /// e^{Σ α_i w_i}.
    pub fn monomial(&self, alpha: &[f64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, &a) in self.0.iter().zip(alpha) {
            if a == 0.0 {
                continue;
            }
            match c {
                LogCoord::NegInf => return Complex64::new(0.0, 0.0),
                LogCoord::Finite(w) => acc += w * a,
            }
        }
        acc.exp()
    }

    pub fn shift(&self, t: f64) -> LogPoint {
        LogPoint(self.0.iter().map(|c| c.shift(t)).collect())
    }

    pub fn coord(&self, i: usize) -> LogCoord {
        self.0[i]
    }
}
