use log_geometry::{LogRegion, SummabilityParams};
use series_core::{Complex64, GenSeries, LogCoord};
use transforms_numeric::{Eval, LogFunction};

use crate::error::ResumError;

/// One term f_p of a decomposition with its convergent expansion F_p.
#[derive(Clone, Debug)]
pub struct Piece {
    pub series: GenSeries,
    pub func: LogFunction,
    /// Certified upper bound for ‖f_p‖ on S^τ_p.
    pub sup_norm: f64,
}

impl Piece {
    pub fn zero() -> Piece {
        let s = GenSeries::zero(1);
        Piece { func: LogFunction::from_series(&s).expect("one variable"), series: s, sup_norm: 0.0 }
    }

    /// f = F̄ on H(log R); its sup there is at most ‖F‖_R.
    pub fn convergent(f: &GenSeries, radius: f64) -> Result<Piece, ResumError> {
        let n = f.norm(&[radius]);
        if !n.certified || !n.value.is_finite() {
            return Err(ResumError::Uncertified(format!("‖F‖ at radius {radius}")));
        }
        Ok(Piece { series: f.clone(), func: LogFunction::from_series(f)?, sup_norm: n.value })
    }

    pub fn scale(&self, c: Complex64) -> Piece {
        Piece {
            series: self.series.scale(c),
            func: LogFunction::linear(c, &self.func, Complex64::new(0.0, 0.0), &self.func),
            sup_norm: self.sup_norm * c.norm(),
        }
    }

    pub fn add(&self, other: &Piece) -> Result<Piece, ResumError> {
        let one = Complex64::new(1.0, 0.0);
        Ok(Piece {
            series: self.series.add(&other.series)?,
            func: LogFunction::linear(one, &self.func, one, &other.func),
            sup_norm: self.sup_norm + other.sup_norm,
        })
    }

    pub fn mul(&self, other: &Piece) -> Result<Piece, ResumError> {
        let (f, g) = (self.func.clone(), other.func.clone());
        let func = LogFunction::new(LogRegion::Intersect(vec![f.domain.clone(), g.domain.clone()]), move |w| {
            let (a, b) = (f.eval(w), g.eval(w));
            Eval { value: a.value * b.value, err: a.err * b.value.norm() + b.err * a.value.norm() + a.err * b.err }
        });
        Ok(Piece { series: self.series.mul(&other.series)?, func, sup_norm: self.sup_norm * other.sup_norm })
    }
}

/// Bounds for the norm sums over the pieces that are not stored.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct NormTail {
    /// Σ_{p ≥ P} ‖F_p‖_{ρ_p} rᵖ.
    pub series: f64,
    /// Σ_{p ≥ P} ‖f_p‖_{S^τ_p} rᵖ.
    pub functions: f64,
}

/// g =_τ Σ_p f_p, with pieces p < P stored and the rest bounded by `tail`.
#[derive(Clone, Debug)]
pub struct TougeronDecomposition {
    pub tau: SummabilityParams,
    pub pieces: Vec<Piece>,
    pub tail: NormTail,
}

/// The assembled expansion and, per exponent, a bound on the contribution of unstored pieces.
#[derive(Clone, Debug)]
pub struct AssembledT {
    pub series: GenSeries,
    pub coeff_errors: Vec<(f64, f64)>,
}

impl TougeronDecomposition {
    pub fn new(tau: SummabilityParams, pieces: Vec<Piece>, tail: NormTail) -> Result<Self, ResumError> {
        if tau.m() != 1 {
            return Err(ResumError::InvalidArgument("decompositions are implemented for one variable".into()));
        }
        let delta = &tau.delta[0].kind;
        for (p, pc) in pieces.iter().enumerate() {
            if pc.series.nvars() != 1 {
                return Err(ResumError::InvalidDecomposition(format!("piece {p} is not a one-variable series")));
            }
            if let Some((k, _)) = pc.series.terms().find(|(k, _)| !delta.contains(k.values()[0])) {
                return Err(ResumError::InvalidDecomposition(format!("piece {p} has exponent {} outside Δ", k.values()[0])));
            }
            if !(pc.sup_norm.is_finite() && pc.sup_norm >= 0.0) {
                return Err(ResumError::Uncertified(format!("sup norm of piece {p}")));
            }
        }
        if !(tail.series.is_finite() && tail.functions.is_finite()) {
            return Err(ResumError::Uncertified("norm tail".into()));
        }
        let d = TougeronDecomposition { tau, pieces, tail };
        for p in 0..d.pieces.len() {
            let n = d.series_norm(p);
            if !n.is_finite() {
                return Err(ResumError::Uncertified(format!("‖F_{p}‖ at ρ_{p}")));
            }
        }
        Ok(d)
    }

    /// f₀ = F̄ and f_p = 0 otherwise.
    pub fn single(tau: SummabilityParams, f: &GenSeries) -> Result<Self, ResumError> {
        let piece = Piece::convergent(f, tau.radius[0])?;
        TougeronDecomposition::new(tau, vec![piece], NormTail::default())
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// ‖F_p‖_{ρ_p}, or ∞ when not certified.
    pub fn series_norm(&self, p: usize) -> f64 {
        let n = self.pieces[p].series.norm(&self.tau.rho_p(p as u64));
        if n.certified {
            n.value
        } else {
            f64::INFINITY
        }
    }

    /// Running sums (Σ_{q≤p} ‖F_q‖ r^q, Σ_{q≤p} ‖f_q‖ r^q).
    pub fn norm_partials(&self) -> Vec<(f64, f64)> {
        let mut acc = (0.0, 0.0);
        let mut rp = 1.0;
        (0..self.len())
            .map(|p| {
                acc.0 += self.series_norm(p) * rp;
                acc.1 += self.pieces[p].sup_norm * rp;
                rp *= self.tau.r;
                acc
            })
            .collect()
    }

    /// max of the two certified norm sums for this decomposition.
    pub fn norm(&self) -> f64 {
        let (a, b) = self.norm_partials().last().copied().unwrap_or((0.0, 0.0));
        (a + self.tail.series).max(b + self.tail.functions)
    }

    /// Σ_{p<P} f_p(w).
    pub fn eval_pieces(&self, w: LogCoord) -> Eval {
        let mut out = Eval { value: Complex64::new(0.0, 0.0), err: 0.0 };
        for pc in &self.pieces {
            let e = pc.func.eval(w);
            out.value += e.value;
            out.err += e.err;
        }
        out
    }

    /// g(w) = Σ_p f_p(w) on S^τ; unstored pieces are covered by the error.
    pub fn eval(&self, w: LogCoord) -> Eval {
        let mut e = self.eval_pieces(w);
        e.err += self.tail.functions;
        e
    }

    /// a_α = Σ_p a_{p,α}, truncated at the cutoff of Δ.
    pub fn assemble_t(&self) -> Result<AssembledT, ResumError> {
        let mut s = GenSeries::zero(1);
        for pc in &self.pieces {
            s = s.add(&pc.series)?;
        }
        let cut = self.tau.delta[0].cutoff;
        if s.cutoff()[0] > cut {
            s = s.truncate(&[cut])?;
        }
        let big_p = self.len();
        let (m, r, big_r) = (self.tau.m_k(), self.tau.r, self.tau.radius[0]);
        let coeff_errors = s
            .terms()
            .map(|(k, _)| {
                let a = k.values()[0];
                // max_{p ≥ P} (p+1)^{αM} r^{−p}, attained at P or at the interior critical point.
                let crit = (a * m / r.ln() - 1.0).floor().max(big_p as f64);
                let f = |p: f64| a * m * (p + 1.0).ln() - p * r.ln();
                let c = f(big_p as f64).max(f(crit)).max(f(crit + 1.0));
                (a, c.exp() * big_r.powf(-a) * self.tail.series)
            })
            .collect();
        Ok(AssembledT { series: s, coeff_errors })
    }

    pub fn scale(&self, c: Complex64) -> TougeronDecomposition {
        let m = c.norm();
        TougeronDecomposition {
            tau: self.tau.clone(),
            pieces: self.pieces.iter().map(|p| p.scale(c)).collect(),
            tail: NormTail { series: self.tail.series * m, functions: self.tail.functions * m },
        }
    }

    /// Piecewise sum; represents the sum of the two functions.
    pub fn add(&self, other: &TougeronDecomposition) -> Result<TougeronDecomposition, ResumError> {
        let n = self.len().max(other.len());
        let mut pieces = Vec::with_capacity(n);
        for p in 0..n {
            pieces.push(match (self.pieces.get(p), other.pieces.get(p)) {
                (Some(a), Some(b)) => a.add(b)?,
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            });
        }
        let tail = NormTail {
            series: self.tail.series + other.tail.series,
            functions: self.tail.functions + other.tail.functions,
        };
        TougeronDecomposition::new(self.tau.clone(), pieces, tail)
    }

    /// Cauchy product h_n = Σ_{p+q=n} f_p g_q.
    pub fn product(&self, other: &TougeronDecomposition) -> Result<TougeronDecomposition, ResumError> {
        if self.is_empty() || other.is_empty() {
            return Err(ResumError::InvalidArgument("product of empty decompositions".into()));
        }
        let n = self.len() + other.len() - 1;
        let mut pieces: Vec<Option<Piece>> = vec![None; n];
        for (p, a) in self.pieces.iter().enumerate() {
            for (q, b) in other.pieces.iter().enumerate() {
                let ab = a.mul(b)?;
                pieces[p + q] = Some(match pieces[p + q].take() {
                    Some(h) => h.add(&ab)?,
                    None => ab,
                });
            }
        }
        let (sa, fa) = self.norm_partials().last().copied().unwrap();
        let (sb, fb) = other.norm_partials().last().copied().unwrap();
        let tail = NormTail {
            series: self.tail.series * (sb + other.tail.series) + sa * other.tail.series,
            functions: self.tail.functions * (fb + other.tail.functions) + fa * other.tail.functions,
        };
        TougeronDecomposition::new(self.tau.clone(), pieces.into_iter().map(Option::unwrap).collect(), tail)
    }

    /// f'_p = f_p + g_p − g_{p−1} for polynomials g_0, …, g_{P−2}; same T and same sum.
    pub fn telescope(&self, g: &[GenSeries]) -> Result<TougeronDecomposition, ResumError> {
        if g.len() + 1 > self.len() {
            return Err(ResumError::InvalidArgument(format!("need at most {} telescoping terms", self.len().saturating_sub(1))));
        }
        let big_r = self.tau.radius[0];
        let gp: Vec<Piece> = g.iter().map(|s| Piece::convergent(s, big_r)).collect::<Result<_, _>>()?;
        let mut pieces = self.pieces.clone();
        for (p, x) in gp.iter().enumerate() {
            pieces[p] = pieces[p].add(x)?;
            pieces[p + 1] = pieces[p + 1].add(&x.scale(Complex64::new(-1.0, 0.0)))?;
        }
        TougeronDecomposition::new(self.tau.clone(), pieces, self.tail)
    }

    /// Replaces f_p by c·f_p at index p and (1−c)·f_p at index p+1, shifting later pieces.
    pub fn split_piece(&self, p: usize, c: f64) -> Result<TougeronDecomposition, ResumError> {
        if p >= self.len() {
            return Err(ResumError::InvalidArgument(format!("no piece {p}")));
        }
        let mut pieces = self.pieces.clone();
        let pc = pieces[p].clone();
        pieces[p] = pc.scale(Complex64::new(c, 0.0));
        pieces.insert(p + 1, pc.scale(Complex64::new(1.0 - c, 0.0)));
        let shifted = TougeronDecomposition::new(self.tau.clone(), pieces, self.tail)?;
        // Later pieces move one slot up, so their weighted tail grows by a factor r.
        Ok(TougeronDecomposition {
            tail: NormTail { series: self.tail.series * self.tau.r, functions: self.tail.functions * self.tau.r },
            ..shifted
        })
    }

    /// Coefficient of X^α in the assembled expansion.
    pub fn t_coeff(&self, alpha: f64) -> Complex64 {
        self.pieces.iter().map(|p| p.series.coeff(&[alpha])).sum()
    }
}
