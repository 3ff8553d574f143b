use series_core::{Complex64, MixedSeries};
use substitutions::combinatorics::{h_beta_gamma_bound, multi_indices, n_ways, split_count, sums_at_most};

#[test]
fn multi_index_counts_are_binomial() {
    for n in 1..=3usize {
        for k in 0..=8u32 {
            let v = multi_indices(n, k);
            assert!(v.iter().all(|b| b.len() == n && b.iter().sum::<u32>() == k));
            let mut expected = 1u64;
            for i in 1..n as u64 {
                expected = expected * (k as u64 + i) / i;
            }
            assert_eq!(v.len() as u64, expected, "n = {n}, k = {k}");
        }
    }
}

#[test]
fn crude_count_bound_holds_from_two_on() {
    for n in 1..=3u32 {
        for k in 2..=8u32 {
            assert!(multi_indices(n as usize, k).len() as u64 <= (k as u64).pow(n), "n = {n}, k = {k}");
        }
    }
    for k in 1..=8u32 {
        assert!(multi_indices(1, k).len() as u64 <= k as u64);
    }
}

#[test]
fn crude_count_bound_fails_below_two() {
    // β = 0 is the only index of sum 0, but 0ⁿ = 0; and n indices of sum 1 exceed 1ⁿ.
    for n in 1..=3u32 {
        assert_eq!(multi_indices(n as usize, 0).len(), 1);
        assert_eq!(0u64.pow(n), 0);
    }
    for n in 2..=3u32 {
        assert_eq!(multi_indices(n as usize, 1).len() as u64, n as u64);
        assert!(n as u64 > 1u64.pow(n));
    }
}

#[test]
fn one_variable_sums_are_compositions() {
    // Ordered sums of k positive integers equal to b: binom(b − 1, k − 1).
    for b in 1..=8u32 {
        for k in 1..=b {
            let mut c = 1u64;
            for i in 0..(k - 1) as u64 {
                c = c * (b as u64 - 1 - i) / (i + 1);
            }
            assert_eq!(n_ways(&[b], k), c);
        }
        assert_eq!(n_ways(&[b], b + 1), 0);
        assert_eq!(sums_at_most(&[b]), 1 << (b - 1));
    }
}

#[test]
fn sums_at_most_the_total_are_bounded() {
    for n in 1..=3usize {
        for k in 0..=8u32 {
            for beta in multi_indices(n, k) {
                let count = sums_at_most(&beta);
                assert!(count <= 1u64 << (n as u32 * k), "β = {beta:?}: {count}");
            }
        }
    }
}

#[test]
fn splitting_identity_for_n_gamma() {
    for np in 1..=2usize {
        for sg in 0..=4u32 {
            for gamma in multi_indices(np, sg) {
                for n in 1..=2usize {
                    for sb in 1..=4u32 {
                        for beta in multi_indices(n, sb) {
                            assert_eq!(n_ways(&gamma, sb), split_count(&gamma, &beta), "γ = {gamma:?}, β = {beta:?}");
                        }
                    }
                }
                assert_eq!(n_ways(&gamma, sg + 1), 0);
            }
        }
    }
}

fn y_monomial_norm(s: &MixedSeries, gamma: &[u32], r: &[f64]) -> f64 {
    s.terms()
        .filter(|(k, _)| k.y == gamma)
        .map(|(k, c)| c.norm() * k.x.values().iter().zip(r).map(|(a, ri)| ri.powf(*a)).product::<f64>())
        .sum()
}

/// Checks ‖H_{β,γ}‖ ≤ 2^{n'Σγ}(ρ/2)^β/ρ̃^γ for every β with Σβ ≤ 4 and every stored γ.
fn check_h_bound(targets: &[MixedSeries], rho: &[f64], rho_tilde: &[f64], r: &[f64]) -> Result<(), String> {
    for (j, t) in targets.iter().enumerate() {
        let norm = t.stored_norm(r, rho_tilde);
        assert!(norm <= rho[j] / 2.0 + 1e-15, "‖σ(Y_{j})‖ = {norm} exceeds ρ_{j}/2");
    }
    let np = targets[0].convergent();
    for k in 0..=4u32 {
        for beta in multi_indices(targets.len(), k) {
            let mut p = MixedSeries::one(targets[0].gevrey(), np, targets[0].x_cutoff().to_vec(), targets[0].y_degree_cutoff());
            for (t, &b) in targets.iter().zip(&beta) {
                p = p.mul(&t.pow(b).unwrap()).unwrap();
            }
            let gammas: std::collections::BTreeSet<Vec<u32>> = p.terms().map(|(k, _)| k.y.clone()).collect();
            for gamma in gammas {
                let h = y_monomial_norm(&p, &gamma, r);
                let bound = h_beta_gamma_bound(&beta, &gamma, rho, rho_tilde);
                if h > bound * (1.0 + 1e-12) {
                    return Err(format!("β = {beta:?}, γ = {gamma:?}: {h} > {bound}"));
                }
            }
        }
    }
    Ok(())
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn h_beta_gamma_bound_holds_without_pure_x_terms() {
    // n = 2, n' = 2, one X' variable; every target term has positive Y' degree.
    let rho = [1.0, 0.6];
    let rho_p = [0.05, 0.04];
    let rt: Vec<f64> = rho_p.iter().map(|p| p * 8.0).collect();
    let r = [0.5];
    let t1 = MixedSeries::from_terms(
        1,
        2,
        vec![(vec![0.0], vec![1, 0], c(0.5)), (vec![1.0], vec![0, 1], c(-0.4)), (vec![0.5], vec![1, 1], c(2.0))],
        vec![4.0],
        12,
    )
    .unwrap();
    let t2 = MixedSeries::from_terms(1, 2, vec![(vec![0.0], vec![0, 1], c(0.3)), (vec![0.0], vec![2, 0], c(0.5))], vec![4.0], 12).unwrap();
    let s1 = t1.stored_norm(&r, &rt);
    let s2 = t2.stored_norm(&r, &rt);
    let t1 = t1.scale(c(rho[0] / 2.0 / s1));
    let t2 = t2.scale(c(rho[1] / 2.0 / s2));
    check_h_bound(&[t1, t2], &rho, &rt, &r).unwrap();
}

#[test]
fn h_beta_gamma_bound_for_the_worked_target() {
    // σ(Y) = X' + Y'² has a pure X' term, outside the setting of the bound; it still holds here.
    let rho = [2.0];
    let r = [0.5];
    let rt = [0.5f64.sqrt()];
    let t = MixedSeries::from_terms(1, 1, vec![(vec![1.0], vec![0], c(1.0)), (vec![0.0], vec![2], c(1.0))], vec![6.0], 12).unwrap();
    check_h_bound(&[t], &rho, &rt, &r).unwrap();
}
