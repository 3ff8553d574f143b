use series_core::{Complex64, MixedSeries};

use crate::error::SubstError;

/// The shapes of substitution supported on mixed jets.
///
/// Indices refer to source variables unless stated otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum SubstKind {
    /// X_i ↦ X'_{perm[i]}.
    Permutation { perm: Vec<usize> },
    /// X_i ↦ (X'_i)^α.
    Ramification { i: usize, alpha: f64 },
    /// X_i ↦ X'_j(λ + Y'_new); X_i is removed and Y'_new is appended after the Y variables.
    RegularBlowUp { i: usize, j: usize, lambda: f64 },
    /// X_i ↦ X'_j X'_i.
    SingularBlowUp { i: usize, j: usize },
    /// X_i ↦ a_i + Y'_new for a_i ≠ 0 and Y_j ↦ b_j + Y'_j.
    ///
    /// Translated X variables become convergent variables appended in increasing order of i.
    Translation { a: Vec<f64>, b: Vec<Complex64>, radius: Vec<f64>, rho: Vec<f64>, y_cutoff: u32 },
    /// Y_j ↦ targets[j] and X_i ↦ X'_i; the targets may use further X' variables.
    Infinitesimal { targets: Vec<MixedSeries>, source_rho: Vec<f64>, target_radius: Vec<f64>, target_rho: Vec<f64> },
    /// X_i ↦ X'_j with X_i removed.
    Identify { i: usize, j: usize },
    /// X_i ↦ 0 with X_i removed.
    SetZero { i: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Substitution {
    pub kind: SubstKind,
    /// Source arity (m, n).
    pub m: usize,
    pub n: usize,
}

fn check_index(i: usize, m: usize, what: &str) -> Result<(), SubstError> {
    if i >= m {
        return Err(SubstError::NonNormal(format!("{what} index {i} out of range for {m} Gevrey variables")));
    }
    Ok(())
}

impl Substitution {
    pub fn permutation(m: usize, n: usize, perm: Vec<usize>) -> Result<Self, SubstError> {
        let mut seen = vec![false; m];
        if perm.len() != m || perm.iter().any(|&p| p >= m || std::mem::replace(&mut seen[p], true)) {
            return Err(SubstError::NonNormal(format!("{perm:?} is not a permutation of {m} variables")));
        }
        Ok(Substitution { kind: SubstKind::Permutation { perm }, m, n })
    }

    pub fn ramification(m: usize, n: usize, i: usize, alpha: f64) -> Result<Self, SubstError> {
        check_index(i, m, "ramified")?;
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(SubstError::NonNormal(format!("ramification exponent {alpha} must be positive")));
        }
        Ok(Substitution { kind: SubstKind::Ramification { i, alpha }, m, n })
    }

    pub fn regular_blow_up(m: usize, n: usize, i: usize, j: usize, lambda: f64) -> Result<Self, SubstError> {
        check_index(i, m, "blown-up")?;
        check_index(j, m, "chart")?;
        if i == j {
            return Err(SubstError::NonNormal("blow-up needs two distinct variables".into()));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(SubstError::NonNormal(format!("λ = {lambda} must be positive")));
        }
        Ok(Substitution { kind: SubstKind::RegularBlowUp { i, j, lambda }, m, n })
    }

    pub fn singular_blow_up(m: usize, n: usize, i: usize, j: usize) -> Result<Self, SubstError> {
        check_index(i, m, "blown-up")?;
        check_index(j, m, "chart")?;
        if i == j {
            return Err(SubstError::NonNormal("blow-up needs two distinct variables".into()));
        }
        Ok(Substitution { kind: SubstKind::SingularBlowUp { i, j }, m, n })
    }

    /// Translation with admissibility |a_i| < R_i and |b_j| < ρ_j checked here.
    pub fn translation(
        a: Vec<f64>,
        b: Vec<Complex64>,
        radius: Vec<f64>,
        rho: Vec<f64>,
        y_cutoff: u32,
    ) -> Result<Self, SubstError> {
        let (m, n) = (a.len(), b.len());
        if radius.len() != m || rho.len() != n {
            return Err(SubstError::NonNormal("one radius per translated variable".into()));
        }
        for (i, (ai, ri)) in a.iter().zip(&radius).enumerate() {
            if *ai < 0.0 || !ai.is_finite() {
                return Err(SubstError::NonNormal(format!("a_{i} = {ai} must be a nonnegative real")));
            }
            if *ai >= *ri {
                return Err(SubstError::Inadmissible(format!("|a_{i}| = {ai} is not below the radius {ri}")));
            }
        }
        for (j, (bj, pj)) in b.iter().zip(&rho).enumerate() {
            if bj.norm() >= *pj {
                return Err(SubstError::Inadmissible(format!("|b_{j}| = {} is not below the radius {pj}", bj.norm())));
            }
        }
        Ok(Substitution { kind: SubstKind::Translation { a, b, radius, rho, y_cutoff }, m, n })
    }

    /// Y_j ↦ targets[j]; requires zero constant terms and ‖targets[j]‖ < ρ_j at the target radii.
    pub fn infinitesimal(
        m: usize,
        targets: Vec<MixedSeries>,
        source_rho: Vec<f64>,
        target_radius: Vec<f64>,
        target_rho: Vec<f64>,
    ) -> Result<Self, SubstError> {
        let n = targets.len();
        if n == 0 {
            return Err(SubstError::NonNormal("infinitesimal substitution needs n > 0".into()));
        }
        let (mt, nt) = (targets[0].gevrey(), targets[0].convergent());
        if mt < m || targets.iter().any(|t| t.gevrey() != mt || t.convergent() != nt) {
            return Err(SubstError::NonNormal("targets must share an arity with at least m Gevrey variables".into()));
        }
        if source_rho.len() != n || target_radius.len() != mt || target_rho.len() != nt {
            return Err(SubstError::NonNormal("radius vectors do not match the arities".into()));
        }
        for (j, t) in targets.iter().enumerate() {
            if t.constant_term() != Complex64::new(0.0, 0.0) {
                return Err(SubstError::NonNormal(format!("σ(Y_{j}) has nonzero constant term")));
            }
            let norm = t.stored_norm(&target_radius, &target_rho);
            if !(norm < source_rho[j]) {
                return Err(SubstError::Inadmissible(format!("‖σ(Y_{j})‖ = {norm} is not below ρ_{j} = {}", source_rho[j])));
            }
        }
        Ok(Substitution { kind: SubstKind::Infinitesimal { targets, source_rho, target_radius, target_rho }, m, n })
    }

    pub fn identify(m: usize, n: usize, i: usize, j: usize) -> Result<Self, SubstError> {
        check_index(i, m, "identified")?;
        check_index(j, m, "target")?;
        if i == j {
            return Err(SubstError::NonNormal("identify needs two distinct variables".into()));
        }
        Ok(Substitution { kind: SubstKind::Identify { i, j }, m, n })
    }

    pub fn set_zero(m: usize, n: usize, i: usize) -> Result<Self, SubstError> {
        check_index(i, m, "zeroed")?;
        Ok(Substitution { kind: SubstKind::SetZero { i }, m, n })
    }

    /// Target arity (m', n').
    pub fn target(&self) -> (usize, usize) {
        let (m, n) = (self.m, self.n);
        match &self.kind {
            SubstKind::Permutation { .. } | SubstKind::Ramification { .. } | SubstKind::SingularBlowUp { .. } => (m, n),
            SubstKind::RegularBlowUp { .. } => (m - 1, n + 1),
            SubstKind::Translation { a, .. } => {
                let t = a.iter().filter(|x| **x != 0.0).count();
                (m - t, n + t)
            }
            SubstKind::Infinitesimal { targets, .. } => (targets[0].gevrey(), targets[0].convergent()),
            SubstKind::Identify { .. } | SubstKind::SetZero { .. } => (m - 1, n),
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            SubstKind::Permutation { .. } => "permutation",
            SubstKind::Ramification { .. } => "ramification",
            SubstKind::RegularBlowUp { .. } => "regular-blow-up",
            SubstKind::SingularBlowUp { .. } => "singular-blow-up",
            SubstKind::Translation { .. } => "translation",
            SubstKind::Infinitesimal { .. } => "infinitesimal",
            SubstKind::Identify { .. } => "identify",
            SubstKind::SetZero { .. } => "set-zero",
        }
    }
}

/// Position of source variable `j` after removing source variable `i`.
pub(crate) fn after_removal(j: usize, i: usize) -> usize {
    if j > i {
        j - 1
    } else {
        j
    }
}
