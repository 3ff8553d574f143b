use series_core::{Complex64, LogCoord, LogPoint};

/// Region descriptors; membership is always a strict predicate.
#[derive(Clone, Debug, PartialEq)]
pub enum LogRegion {
    /// H(𝔯) = {Re w < 𝔯} in every coordinate.
    Disk { r: Vec<f64> },
    /// S(d, 𝔯, θ) = {Re w < 𝔯, |d − Im w| < θ} ∪ {−∞}, one variable.
    Sector { d: f64, r: f64, theta: f64 },
    /// T(d) = {Im w = d} ∪ {−∞}, one variable.
    Line { d: f64 },
    /// V(d, D) = {cos(Im w − d) > D e^{Re w}} ∪ {−∞}, one variable.
    BorelDisk { d: f64, big_d: f64 },
    /// Sᵏ(𝔯, θ) = {w ∈ H(𝔯): Σ k_i |Im w_i| < θ}.
    PolySector { k: Vec<f64>, r: Vec<f64>, theta: f64 },
    /// Hᵏ_p(𝔯) = {w ∈ H(𝔯): k·Re w < k·𝔯 − log(1+p)}.
    PolyDisk { k: Vec<f64>, r: Vec<f64>, p: u64 },
    /// Sᵏ_p(𝔯, θ) = Sᵏ(𝔯, θ) ∪ Hᵏ_p(𝔯).
    PolySectorP { k: Vec<f64>, r: Vec<f64>, theta: f64, p: u64 },
    Intersect(Vec<LogRegion>),
    Union(Vec<LogRegion>),
}

/// k·Re w with 0·(−∞) = 0.
fn dot_re(k: &[f64], w: &LogPoint) -> f64 {
    k.iter()
        .zip(&w.0)
        .map(|(ki, c)| if *ki == 0.0 { 0.0 } else { ki * c.re() })
        .sum()
}

fn dot(k: &[f64], r: &[f64]) -> f64 {
    k.iter().zip(r).map(|(a, b)| if *a == 0.0 { 0.0 } else { a * b }).sum()
}

fn in_disk(r: &[f64], w: &LogPoint) -> bool {
    w.dim() == r.len() && w.0.iter().zip(r).all(|(c, ri)| c.re() < *ri)
}

impl LogRegion {
    pub fn disk1(r: f64) -> Self {
        LogRegion::Disk { r: vec![r] }
    }

    pub fn dim(&self) -> usize {
        match self {
            LogRegion::Disk { r } => r.len(),
            LogRegion::Sector { .. } | LogRegion::Line { .. } | LogRegion::BorelDisk { .. } => 1,
            LogRegion::PolySector { r, .. } | LogRegion::PolyDisk { r, .. } | LogRegion::PolySectorP { r, .. } => r.len(),
            LogRegion::Intersect(v) | LogRegion::Union(v) => v.first().map_or(0, |x| x.dim()),
        }
    }

    pub fn contains(&self, w: &LogPoint) -> bool {
        if w.dim() != self.dim() {
            return false;
        }
        match self {
            LogRegion::Disk { r } => in_disk(r, w),
            LogRegion::Sector { d, r, theta } => match w.0[0] {
                LogCoord::NegInf => true,
                LogCoord::Finite(z) => z.re < *r && (d - z.im).abs() < *theta,
            },
            LogRegion::Line { d } => match w.0[0] {
                LogCoord::NegInf => true,
                LogCoord::Finite(z) => z.im == *d,
            },
            LogRegion::BorelDisk { d, big_d } => match w.0[0] {
                LogCoord::NegInf => true,
                LogCoord::Finite(z) => (z.im - d).cos() > big_d * z.re.exp(),
            },
            LogRegion::PolySector { k, r, theta } => {
                in_disk(r, w) && k.iter().zip(&w.0).map(|(ki, c)| ki * c.im().abs()).sum::<f64>() < *theta
            }
            LogRegion::PolyDisk { k, r, p } => in_disk(r, w) && dot_re(k, w) < dot(k, r) - (1.0 + *p as f64).ln(),
            LogRegion::PolySectorP { k, r, theta, p } => {
                LogRegion::PolySector { k: k.clone(), r: r.clone(), theta: *theta }.contains(w)
                    || LogRegion::PolyDisk { k: k.clone(), r: r.clone(), p: *p }.contains(w)
            }
            LogRegion::Intersect(v) => v.iter().all(|x| x.contains(w)),
            LogRegion::Union(v) => v.iter().any(|x| x.contains(w)),
        }
    }

    pub fn contains_complex(&self, w: Complex64) -> bool {
        self.contains(&LogPoint::one(w))
    }

    /// Supremum of Re w over a one-variable region, when finite.
    pub fn re_sup(&self) -> Option<f64> {
        match self {
            LogRegion::Disk { r } if r.len() == 1 => Some(r[0]),
            LogRegion::Sector { r, .. } => Some(*r),
            LogRegion::PolySector { r, .. } | LogRegion::PolySectorP { r, .. } | LogRegion::PolyDisk { r, .. } if r.len() == 1 => Some(r[0]),
            LogRegion::Intersect(v) => v.iter().filter_map(|x| x.re_sup()).reduce(f64::min),
            LogRegion::Union(v) => v.iter().map(|x| x.re_sup()).collect::<Option<Vec<_>>>().map(|s| s.into_iter().fold(f64::NEG_INFINITY, f64::max)),
            _ => None,
        }
    }

    /// {w : λw ∈ self} for one-variable regions closed under this scaling.
    pub fn scaled_preimage(&self, lambda: f64) -> Option<LogRegion> {
        if !(lambda > 0.0) {
            return None;
        }
        Some(match self {
            LogRegion::Disk { r } => LogRegion::Disk { r: r.iter().map(|x| x / lambda).collect() },
            LogRegion::Sector { d, r, theta } => LogRegion::Sector { d: d / lambda, r: r / lambda, theta: theta / lambda },
            LogRegion::Line { d } => LogRegion::Line { d: d / lambda },
            LogRegion::Intersect(v) => LogRegion::Intersect(v.iter().map(|x| x.scaled_preimage(lambda)).collect::<Option<_>>()?),
            LogRegion::Union(v) => LogRegion::Union(v.iter().map(|x| x.scaled_preimage(lambda)).collect::<Option<_>>()?),
            _ => return None,
        })
    }

    /// Membership of z = e^w in exp(Hᵏ_p(𝔯)) = {|z_i| < e^{𝔯_i}, Π|z_i|^{k_i} < e^{k·𝔯}/(1+p)}.
    pub fn polydisk_contains_z(k: &[f64], r: &[f64], p: u64, z: &[Complex64]) -> bool {
        if z.iter().zip(r).any(|(zi, ri)| zi.norm() >= ri.exp()) {
            return false;
        }
        let lhs: f64 = z.iter().zip(k).map(|(zi, ki)| if *ki == 0.0 { 1.0 } else { zi.norm().powf(*ki) }).product();
        lhs < dot(k, r).exp() / (1.0 + p as f64)
    }
}
