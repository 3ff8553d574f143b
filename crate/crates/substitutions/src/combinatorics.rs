//! Counting helpers behind the coefficient bounds of infinitesimal substitutions.

/// All β ∈ ℕⁿ with Σβ = k.
pub fn multi_indices(n: usize, k: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in multi_indices(n - 1, k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All δ ≤ γ componentwise.
fn below(gamma: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &g in gamma {
        out = out.into_iter().flat_map(|v| (0..=g).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// N(γ, k): ordered ways to write γ as a sum of exactly k nonzero elements of ℕⁿ.
pub fn n_ways(gamma: &[u32], k: u32) -> u64 {
    if k == 0 {
        return u64::from(gamma.iter().all(|&g| g == 0));
    }
    below(gamma)
        .into_iter()
        .filter(|d| d.iter().any(|&x| x > 0))
        .map(|d| {
            let rest: Vec<u32> = gamma.iter().zip(&d).map(|(g, x)| g - x).collect();
            n_ways(&rest, k - 1)
        })
        .sum()
}

/// Ordered ways to write β as a sum of at most Σβ nonzero elements.
pub fn sums_at_most(beta: &[u32]) -> u64 {
    (0..=beta.iter().sum::<u32>()).map(|k| n_ways(beta, k)).sum()
}

/// Σ over γ¹ + … + γⁿ = γ of Π_j N(γʲ, β_j).
pub fn split_count(gamma: &[u32], beta: &[u32]) -> u64 {
    match beta.split_first() {
        None => u64::from(gamma.iter().all(|&g| g == 0)),
        Some((&b0, rest)) => below(gamma)
            .into_iter()
            .map(|g1| {
                let remaining: Vec<u32> = gamma.iter().zip(&g1).map(|(g, x)| g - x).collect();
                let head = n_ways(&g1, b0);
                if head == 0 {
                    0
                } else {
                    head * split_count(&remaining, rest)
                }
            })
            .sum(),
    }
}

/// 2^{n'Σγ}·(ρ/2)^β/ρ̃^γ.
pub fn h_beta_gamma_bound(beta: &[u32], gamma: &[u32], rho: &[f64], rho_tilde: &[f64]) -> f64 {
    let sg: u32 = gamma.iter().sum();
    let num: f64 = beta.iter().zip(rho).map(|(&b, r)| (r / 2.0).powi(b as i32)).product();
    let den: f64 = gamma.iter().zip(rho_tilde).map(|(&g, r)| r.powi(g as i32)).product();
    2f64.powi((gamma.len() as u32 * sg) as i32) * num / den
}
