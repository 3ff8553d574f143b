use std::f64::consts::PI;

use log_geometry::LogRegion;
use resummation::models::euler_decomposition;
use resummation::*;
use series_core::{Complex64, GenSeries, SupportDescriptor, SupportKind, TailBound};

fn grid(a: f64, b: f64, n: usize) -> Vec<Complex64> {
    (0..n).map(|j| Complex64::new(a + (b - a) * j as f64 / (n - 1) as f64, 0.0)).collect()
}

fn betas() -> Vec<f64> {
    (1..=10).map(|b| b as f64).collect()
}

#[test]
fn convergent_single_piece() {
    // Σ_{n<40} (X/2)ⁿ with its geometric tail.
    let terms = (0..40).map(|n| (vec![n as f64], Complex64::new(0.5f64.powi(n), 0.0))).collect();
    let sup = SupportDescriptor::new(SupportKind::Arith { step: 1.0 }, 39.0).unwrap();
    let f = GenSeries::from_terms(1, terms, Some(vec![sup.clone()])).unwrap().with_tail(Some(TailBound::new(vec![1.0], 2.0 * 0.5f64.powi(40))));
    let tau = SummabilityParams::one_var(vec![1.0], 1.0, 2.0, 0.75 * PI, sup).unwrap();
    let d = TougeronDecomposition::single(tau, &f).unwrap();
    let rep = gevrey_check(&d, &LogRegion::disk1(-0.5), &[1.0, 2.0, 3.0, 4.0, 5.0], &grid(-6.0, -1.0, 40)).unwrap();
    assert!(rep.holds, "{rep:?}");
    // The remainder is (X/2)^β/(1 − X/2), so E is about 1/2 up to Γ(β).
    assert!(rep.d.is_finite() && rep.e < 1.0, "{rep:?}");
}

#[test]
fn euler_decomposition_has_gamma_growth() {
    let d = euler_decomposition(30, 20).unwrap();
    let rep = gevrey_check(&d, &LogRegion::disk1(0.5f64.ln()), &betas(), &grid(-4.5, -1.0, 36)).unwrap();
    assert!(rep.holds, "{rep:?}");
    // |remainder| ≤ Γ(β)|x|^β for the Euler integral, so D E^β ≤ e^{O(1)} on this grid.
    for row in &rep.rows {
        assert!(row.max_q < 0.1, "{row:?}");
        assert!(row.resolved >= 10, "{row:?}");
    }
    assert!(rep.d < 2.0 && rep.e < 2.0, "{rep:?}");
}

#[test]
fn perturbed_coefficient_is_detected() {
    let mut d = euler_decomposition(30, 20).unwrap();
    let alpha = 4.0;
    let bump = GenSeries::monomial(&[alpha], Complex64::new(1.0, 0.0)).unwrap();
    d.pieces[0].series = d.pieces[0].series.add(&bump).unwrap();
    let rep = gevrey_check(&d, &LogRegion::disk1(0.5f64.ln()), &betas(), &grid(-4.5, -1.0, 36)).unwrap();
    assert!(!rep.holds);
    let expected: Vec<f64> = betas().into_iter().filter(|b| *b > alpha).collect();
    assert_eq!(rep.failing, expected, "{rep:?}");
}

#[test]
fn grid_outside_subsector_is_rejected() {
    let d = euler_decomposition(5, 10).unwrap();
    let e = gevrey_check(&d, &LogRegion::disk1(-2.0), &[1.0], &grid(-3.0, -1.0, 5));
    assert!(matches!(e, Err(ResumError::InvalidArgument(_))));
}
