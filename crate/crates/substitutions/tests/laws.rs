use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use series_core::{Complex64, MixedSeries};
use substitutions::Substitution;

const TRIALS: usize = 100;

struct Shape {
    m: usize,
    n: usize,
    xc: Vec<f64>,
    yc: u32,
    /// Allowed exponents for each X.
    x_steps: Vec<f64>,
}

fn random_series(rng: &mut ChaCha8Rng, s: &Shape, terms: usize, real: bool) -> MixedSeries {
    let mut out = Vec::new();
    for _ in 0..terms {
        let x: Vec<f64> = (0..s.m).map(|_| *s.x_steps.choose(rng).unwrap()).collect();
        let mut y = vec![0u32; s.n];
        for _ in 0..rng.gen_range(0..=2) {
            if s.n > 0 {
                y[rng.gen_range(0..s.n)] += 1;
            }
        }
        let re = rng.gen_range(-3..=3) as f64;
        let im = if real { 0.0 } else { rng.gen_range(-3..=3) as f64 };
        out.push((x, y, Complex64::new(re, im)));
    }
    MixedSeries::from_terms(s.m, s.n, out, s.xc.clone(), s.yc).unwrap()
}

fn shape(m: usize, n: usize, xc: Vec<f64>, yc: u32) -> Shape {
    Shape { m, n, xc, yc, x_steps: vec![0.0, 0.5, 1.0, 1.5, 2.0] }
}

/// A random substitution of the named kind with a shape its inputs must have.
fn random_sigma(rng: &mut ChaCha8Rng, kind: &str) -> (Substitution, Shape) {
    random_sigma_with(rng, kind, false)
}

fn random_sigma_with(rng: &mut ChaCha8Rng, kind: &str, real: bool) -> (Substitution, Shape) {
    let im = |rng: &mut ChaCha8Rng, r: f64| if real { 0.0 } else { rng.gen_range(-r..r) };
    match kind {
        "permutation" => {
            let mut perm = vec![0, 1, 2];
            perm.shuffle(rng);
            (Substitution::permutation(3, 1, perm).unwrap(), shape(3, 1, vec![3.0; 3], 4))
        }
        "ramification" => {
            let alpha = *[0.5, 1.5, 2.0, 3.0].choose(rng).unwrap();
            (Substitution::ramification(2, 1, rng.gen_range(0..2), alpha).unwrap(), shape(2, 1, vec![3.0; 2], 4))
        }
        "regular-blow-up" => {
            let i = rng.gen_range(0..2);
            let lambda = *[0.5, 1.0, 2.0].choose(rng).unwrap();
            (Substitution::regular_blow_up(2, 1, i, 1 - i, lambda).unwrap(), shape(2, 1, vec![2.0; 2], 4))
        }
        "singular-blow-up" => {
            let i = rng.gen_range(0..2);
            (Substitution::singular_blow_up(2, 1, i, 1 - i).unwrap(), shape(2, 1, vec![3.0; 2], 4))
        }
        "translation" => {
            let a = *[0.5, 1.0, 4.0].choose(rng).unwrap();
            let b = Complex64::new(rng.gen_range(-0.5..0.5), im(rng, 0.5));
            let s = Substitution::translation(vec![0.0, a], vec![b], vec![1.0, 5.0], vec![1.0], 5).unwrap();
            (s, shape(2, 1, vec![3.0, f64::INFINITY], u32::MAX))
        }
        "infinitesimal" => {
            // Every target monomial carries X'₂ or Y'², so five-fold products leave the jet.
            let pool: [(&[f64], &[u32]); 4] = [(&[0.0, 1.0], &[0]), (&[1.0, 1.0], &[0]), (&[0.0, 0.0], &[2]), (&[0.0, 1.0], &[1])];
            let mut terms = Vec::new();
            for (x, y) in pool {
                if rng.gen_bool(0.7) {
                    let re = rng.gen_range(-0.2..0.2);
                    terms.push((x.to_vec(), y.to_vec(), Complex64::new(re, im(rng, 0.2))));
                }
            }
            let terms = if terms.is_empty() { vec![(vec![0.0, 1.0], vec![0], Complex64::new(0.1, 0.0))] } else { terms };
            let t = MixedSeries::from_terms(2, 1, terms, vec![3.0, 3.0], 3).unwrap();
            let s = Substitution::infinitesimal(1, vec![t], vec![10.0], vec![1.0, 1.0], vec![1.0]).unwrap();
            (s, shape(1, 1, vec![3.0], 4))
        }
        "identify" => {
            let i = rng.gen_range(0..3);
            let j = (i + rng.gen_range(1..3)) % 3;
            (Substitution::identify(3, 1, i, j).unwrap(), shape(3, 1, vec![3.0; 3], 4))
        }
        "set-zero" => (Substitution::set_zero(2, 1, rng.gen_range(0..2)).unwrap(), shape(2, 1, vec![3.0; 2], 4)),
        _ => unreachable!(),
    }
}

const KINDS: [&str; 8] =
    ["permutation", "ramification", "regular-blow-up", "singular-blow-up", "translation", "infinitesimal", "identify", "set-zero"];

/// Kinds that only relabel exponents, where the laws hold with no rounding at all.
fn monomial_kind(kind: &str) -> bool {
    matches!(kind, "permutation" | "ramification" | "singular-blow-up" | "identify" | "set-zero")
}

#[test]
fn homomorphism_laws_per_kind() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for kind in KINDS {
        for trial in 0..TRIALS {
            let (sigma, s) = random_sigma(&mut rng, kind);
            let f = random_series(&mut rng, &s, 5, false);
            let g = random_series(&mut rng, &s, 5, false);
            let sum_then = sigma.apply(&f.add(&g).unwrap()).unwrap();
            let then_sum = sigma.apply(&f).unwrap().add(&sigma.apply(&g).unwrap()).unwrap();
            let prod_then = sigma.apply(&f.mul(&g).unwrap()).unwrap();
            let then_prod = sigma.apply(&f).unwrap().mul(&sigma.apply(&g).unwrap()).unwrap();
            let tol = if monomial_kind(kind) { 0.0 } else { 1e-12 };
            assert!(sum_then.max_rel_diff(&then_sum) <= tol, "{kind} trial {trial}: sum");
            assert!(prod_then.max_rel_diff(&then_prod) <= tol, "{kind} trial {trial}: product {}", prod_then.max_rel_diff(&then_prod));
            let one = MixedSeries::one(s.m, s.n, s.xc.clone(), s.yc);
            let (xc, yc) = sigma.output_cutoffs(&one);
            assert_eq!(sigma.apply(&one).unwrap(), MixedSeries::one(xc.len(), sigma.target().1, xc, yc));
        }
    }
}

#[test]
fn real_inputs_stay_real() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for kind in KINDS {
        for _ in 0..20 {
            let (sigma, s) = random_sigma_with(&mut rng, kind, true);
            let f = random_series(&mut rng, &s, 6, true);
            assert!(sigma.apply(&f).unwrap().is_real(), "{kind}");
        }
    }
}

#[test]
fn permutation_preserves_terms_and_norms() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..TRIALS {
        let (sigma, s) = random_sigma(&mut rng, "permutation");
        let substitutions::SubstKind::Permutation { perm } = &sigma.kind else { unreachable!() };
        let f = random_series(&mut rng, &s, 8, false);
        let out = sigma.apply(&f).unwrap();
        let mut a: Vec<String> = f.terms().map(|(_, c)| format!("{c}")).collect();
        let mut b: Vec<String> = out.terms().map(|(_, c)| format!("{c}")).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        let r: Vec<f64> = (0..3).map(|_| rng.gen_range(0.2..3.0)).collect();
        let mut rp = vec![0.0; 3];
        for (i, &p) in perm.iter().enumerate() {
            rp[p] = r[i];
        }
        let (n1, n2) = (f.stored_norm(&r, &[0.7]), out.stored_norm(&rp, &[0.7]));
        assert!((n1 - n2).abs() <= 1e-14 * n1.max(1.0));
    }
}

#[test]
fn output_cutoffs_never_lose_known_terms() {
    // Every term of σF below the output cutoffs must come from a term of F below the input cutoffs:
    // enlarging the input jet with higher terms leaves the output jet unchanged.
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for kind in KINDS {
        for _ in 0..20 {
            let (sigma, s) = random_sigma(&mut rng, kind);
            let f = random_series(&mut rng, &s, 5, false);
            let (xc, yc) = sigma.output_cutoffs(&f);
            let wide: Vec<f64> = s.xc.iter().map(|c| c + 2.0).collect();
            let mut extra = Vec::new();
            for i in 0..s.m {
                let mut x = vec![0.0; s.m];
                x[i] = s.xc[i] + 0.5;
                if x[i].is_finite() {
                    extra.push((x, vec![0; s.n], Complex64::new(1.0, 0.0)));
                }
            }
            if s.n > 0 && s.yc != u32::MAX {
                let mut y = vec![0; s.n];
                y[0] = s.yc + 1;
                extra.push((vec![0.0; s.m], y, Complex64::new(1.0, 0.0)));
            }
            let yw = if s.yc == u32::MAX { u32::MAX } else { s.yc + 2 };
            let big = f.with_cutoffs(wide, yw).add(&MixedSeries::from_terms(s.m, s.n, extra, f.x_cutoff().iter().map(|c| c + 2.0).collect(), yw).unwrap()).unwrap();
            let out_big = match sigma.apply(&big) {
                Ok(o) => o.with_cutoffs(xc.clone(), yc),
                Err(_) => continue,
            };
            let out = sigma.apply(&f).unwrap();
            assert!(out.max_rel_diff(&out_big) <= 1e-12, "{kind}");
        }
    }
}
