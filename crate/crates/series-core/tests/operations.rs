use std::f64::consts::{LN_2, PI};

use series_core::{
    parse_gps, Complex64, GenSeries, LogCoord, LogPoint, MixedSeries, SeriesError, SupportDescriptor, SupportKind, TailBound,
};

const ZETA2: f64 = 1.644_934_066_848_226_4;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn poly(terms: &[(f64, f64)]) -> GenSeries {
    GenSeries::from_terms(1, terms.iter().map(|&(a, v)| (vec![a], c(v))).collect(), None).unwrap()
}

fn zeta_series(n: u64) -> GenSeries {
    let text = format!(
        "gps 1 vars=1 yvars=0\nsupport 1 logint cutoff=log({n})\nfill 1 0\ntail r=exp(-2) bound={}\n",
        1.0 / n as f64
    );
    parse_gps(&text).unwrap().to_gen_series().unwrap()
}

#[test]
fn add_examples() {
    let s = poly(&[(0.0, 1.0), (1.0, 1.0)]).add(&poly(&[(1.0, 2.0)])).unwrap();
    assert_eq!(s, poly(&[(0.0, 1.0), (1.0, 3.0)]));
    let t = poly(&[(2f64.ln(), 1.0)]).add(&poly(&[(3f64.ln(), 1.0)])).unwrap();
    assert_eq!(t.len(), 2);
    assert!(poly(&[(1.0, 1.0)]).add(&GenSeries::zero(2)).is_err());
}

#[test]
fn mul_examples() {
    let p = poly(&[(0.0, 1.0), (1.0, 1.0)]).mul(&poly(&[(0.0, 1.0), (1.0, -1.0)])).unwrap();
    assert_eq!(p, poly(&[(0.0, 1.0), (2.0, -1.0)]));
    let q = poly(&[(0.5, 1.0)]).mul(&poly(&[(0.5, 1.0)])).unwrap();
    assert_eq!(q, poly(&[(1.0, 1.0)]));
}

#[test]
fn norm_examples() {
    assert_eq!(poly(&[(0.0, 1.0), (1.0, 1.0)]).norm(&[0.5]).value, 1.5);
    assert_eq!(GenSeries::zero(1).norm(&[0.5]).value, 0.0);
    let z = zeta_series(10_000);
    let n = z.norm(&[(-2f64).exp()]);
    assert!(n.certified);
    assert!(n.value >= ZETA2 && n.value - ZETA2 <= 1e-4);
    let uncert = z.with_tail(None).norm(&[(-2f64).exp()]);
    assert!(!uncert.certified && uncert.value < ZETA2);
}

#[test]
fn ord_examples() {
    let f = GenSeries::from_terms(2, vec![(vec![2.0, 1.0], c(1.0)), (vec![3.0, 0.0], c(1.0))], None).unwrap();
    assert_eq!(f.ord(), 3.0);
    assert_eq!(f.ord_i(0), 2.0);
    assert_eq!(GenSeries::zero(1).ord(), f64::INFINITY);
    assert_eq!(GenSeries::constant(1, c(5.0)).ord(), 0.0);
}

#[test]
fn monomial_divide_examples() {
    assert_eq!(poly(&[(2.0, 1.0), (3.0, 1.0)]).monomial_divide(0, 2.0).unwrap(), poly(&[(0.0, 1.0), (1.0, 1.0)]).with_support(vec![SupportDescriptor::finite(vec![0.0, 1.0], f64::INFINITY)]).unwrap());
    let g = poly(&[(LN_2, 1.0)]).monomial_divide(0, LN_2).unwrap();
    assert_eq!(g.coeff(&[0.0]), c(1.0));
    match poly(&[(0.0, 1.0), (1.0, 1.0)]).monomial_divide(0, 1.0) {
        Err(SeriesError::MonomialDivision { min_exponent, .. }) => assert_eq!(min_exponent, 0.0),
        other => panic!("expected division error, got {other:?}"),
    }
}

#[test]
fn formal_borel_examples() {
    assert_eq!(poly(&[(2.0, 1.0)]).formal_borel(1.0).unwrap().coeff(&[2.0]), c(1.0));
    let fact: Vec<(f64, f64)> = (0..15).map(|n| ((n + 1) as f64, (1..=n).map(|k| k as f64).product())).collect();
    let b = poly(&fact).formal_borel(1.0).unwrap();
    for n in 0..15 {
        assert!((b.coeff(&[(n + 1) as f64]) - c(1.0)).norm() < 1e-13);
    }
    assert!(GenSeries::one(1).formal_borel(1.0).unwrap().is_zero());
}

#[test]
fn formal_laplace_examples() {
    let l = poly(&[(0.5, 1.0)]).formal_laplace(1.0).unwrap();
    assert!((l.coeff(&[0.5]).re - PI.sqrt()).abs() < 1e-14);
    assert_eq!(poly(&[(1.0, 1.0)]).formal_laplace(2.0).unwrap(), poly(&[(1.0, 1.0)]));
    assert_eq!(GenSeries::one(1).formal_laplace(1.0).unwrap().constant_term(), c(1.0));
    assert!(matches!(GenSeries::zero(2).formal_laplace(1.0), Err(SeriesError::NotOneVariable(2))));
}

#[test]
fn borel_tail_is_scaled() {
    let f = zeta_series(100);
    let b = f.formal_borel(1.0).unwrap();
    let tb = b.tail().unwrap();
    assert!((tb.bound - f.tail().unwrap().bound / series_core::gamma(100f64.ln())).abs() < 1e-15);
    assert!(f.formal_laplace(1.0).unwrap().tail().is_none());
}

#[test]
fn eval_logsum_examples() {
    let f = poly(&[(0.0, 1.0), (1.0, 1.0)]);
    let v = f.eval_logsum(&LogPoint::reals(&[0.5f64.ln()])).unwrap();
    assert!((v.value.re - 1.5).abs() < 1e-15 && v.certified && v.error == 0.0);
    let z = zeta_series(100_000);
    let s = z.eval_logsum(&LogPoint::reals(&[-2.0])).unwrap();
    assert!(s.certified);
    assert!(s.error <= 1.0e-5 * (1.0 + 1e-9));
    assert!((s.value.re - ZETA2).abs() <= s.error);
    assert!((s.value.re - ZETA2).abs() > 1e-7);
    let out = z.eval_logsum(&LogPoint::reals(&[-1.5])).unwrap();
    assert!(!out.certified);
    let origin = z.eval_logsum(&LogPoint::origin(1)).unwrap();
    assert_eq!(origin.value, c(1.0));
}

#[test]
fn restrict_fiber_examples() {
    let f = GenSeries::from_terms(2, vec![(vec![1.0, 1.0], c(1.0)), (vec![0.0, 2.0], c(1.0))], None).unwrap();
    let g = f.restrict_fiber(0, LogCoord::real(0.0)).unwrap();
    assert_eq!(g, GenSeries::from_terms(1, vec![(vec![1.0], c(1.0)), (vec![2.0], c(1.0))], None).unwrap());
    let h = f.restrict_fiber(0, LogCoord::NegInf).unwrap();
    assert_eq!(h.len(), 1);
    let p = GenSeries::from_terms(2, vec![(vec![0.0, 0.0], c(1.0)), (vec![1.0, 0.0], c(1.0)), (vec![0.0, 1.0], c(1.0)), (vec![1.0, 1.0], c(1.0))], None).unwrap();
    let q = p.restrict_fiber(0, LogCoord::real(LN_2)).unwrap();
    assert!((q.coeff(&[0.0]) - c(3.0)).norm() < 1e-15 && (q.coeff(&[1.0]) - c(3.0)).norm() < 1e-15);
    let bounded = p.with_tail(Some(TailBound::new(vec![1.0, 1.0], 0.1)));
    assert!(matches!(bounded.restrict_fiber(0, LogCoord::real(LN_2)), Err(SeriesError::RadiusViolation { .. })));
    let r = bounded.restrict_fiber(0, LogCoord::real(-1.0)).unwrap();
    assert!(r.tail().unwrap().floor <= 0.1);
}

#[test]
fn split_examples() {
    let f = GenSeries::from_terms(2, vec![(vec![1.0, 0.0], c(1.0)), (vec![0.0, 1.0], c(1.0))], None).unwrap();
    let parts = f.split_by_monomials().unwrap();
    assert_eq!(parts[0].0, 1.0);
    assert_eq!(parts[1].0, 1.0);
    assert_eq!(parts[0].1.constant_term(), c(1.0));
    let g = GenSeries::from_terms(2, vec![(vec![2.0, 1.0], c(1.0))], None).unwrap();
    let parts = g.split_by_monomials().unwrap();
    assert_eq!(parts[0].0, 2.0);
    assert_eq!(parts[0].1.coeff(&[0.0, 1.0]), c(1.0));
    assert!(parts[1].1.is_zero());
    let h = poly(&[(0.5, 1.0), (1.0, 1.0)]).split_by_monomials().unwrap();
    assert_eq!(h[0].0, 0.5);
    assert_eq!(h[0].1.coeff(&[0.0]), c(1.0));
    assert_eq!(h[0].1.coeff(&[0.5]), c(1.0));
    assert!(poly(&[(0.0, 1.0)]).split_by_monomials().is_err());
}

#[test]
fn invert_examples() {
    let f = MixedSeries::from_terms(1, 1, vec![(vec![0.0], vec![0], c(1.0)), (vec![0.0], vec![1], c(-1.0))], vec![2.0], 8).unwrap();
    let g = f.invert().unwrap();
    assert!((0..=8).all(|d| g.coeff(&[0.0], &[d]) == c(1.0)));
    assert_eq!(MixedSeries::constant(1, 0, vec![1.0], 0, c(2.0)).invert().unwrap().constant_term(), c(0.5));
    let u = MixedSeries::from_terms(
        1,
        1,
        vec![(vec![0.0], vec![0], c(3.0)), (vec![0.5], vec![0], c(1.0)), (vec![2f64.sqrt()], vec![1], c(-2.0))],
        vec![4.0],
        5,
    )
    .unwrap();
    let p = u.mul(&u.invert().unwrap()).unwrap();
    for (k, v) in p.terms() {
        if k.is_zero() {
            assert!((v - c(1.0)).norm() < 1e-12);
        } else {
            assert!(v.norm() < 1e-12, "coefficient {v} at {k:?}");
        }
    }
}

#[test]
fn support_violation_rejected() {
    let sup = vec![SupportDescriptor::new(SupportKind::Arith { step: 0.5 }, 3.0).unwrap()];
    assert!(matches!(
        GenSeries::from_terms(1, vec![(vec![0.7], c(1.0))], Some(sup.clone())),
        Err(SeriesError::SupportViolation { .. })
    ));
    let f = GenSeries::from_terms(1, vec![(vec![1.5], c(1.0)), (vec![4.0], c(1.0))], Some(sup)).unwrap();
    assert_eq!(f.len(), 1);
    assert!(f.tail().is_none());
    f.validate().unwrap();
}
