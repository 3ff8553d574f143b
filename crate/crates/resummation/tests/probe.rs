use std::f64::consts::PI;

use resummation::models::euler_decomposition;
use resummation::*;
use series_core::{Complex64, GenSeries, SupportDescriptor, SupportKind};

fn grid() -> Vec<Complex64> {
    (0..50).map(|j| Complex64::new(-4.5 + 3.5 * j as f64 / 49.0, 0.0)).collect()
}

#[test]
fn telescoped_rearrangement_agrees() {
    let d1 = euler_decomposition(20, 12).unwrap();
    let g: Vec<GenSeries> = (0..6)
        .map(|p| GenSeries::from_terms(1, vec![(vec![1.0 + p as f64], Complex64::new(0.2, 0.0)), (vec![3.0], Complex64::new(-0.1, 0.0))], None).unwrap())
        .collect();
    let d2 = d1.telescope(&g).unwrap();
    let rep = quasianalyticity_probe(&d1, &d2, &grid(), 1e-12).unwrap();
    assert!(rep.same_t && rep.max_discrepancy <= 1e-8, "{rep:?}");
}

#[test]
fn split_piece_agrees() {
    let d1 = euler_decomposition(20, 12).unwrap();
    let d2 = d1.split_piece(3, 0.4).unwrap();
    assert_eq!(d2.len(), 21);
    let rep = quasianalyticity_probe(&d1, &d2, &grid(), 1e-12).unwrap();
    assert!(rep.same_t && rep.max_discrepancy <= 1e-8, "{rep:?}");
}

#[test]
fn different_t_separates() {
    let delta = SupportDescriptor::new(SupportKind::Arith { step: 1.0 }, 12.0).unwrap();
    let tau = SummabilityParams::one_var(vec![1.0], 0.5, 2.0, 0.75 * PI, delta).unwrap();
    let d1 = euler_decomposition(20, 12).unwrap();
    let bump = GenSeries::from_terms(1, vec![(vec![1.0], Complex64::new(1.0, 0.0))], None).unwrap();
    let d2 = d1.add(&TougeronDecomposition::single(tau, &bump).unwrap()).unwrap();
    let rep = quasianalyticity_probe(&d1, &d2, &grid(), 1e-12).unwrap();
    assert!(!rep.same_t && rep.max_discrepancy >= 1e-3, "{rep:?}");
}
