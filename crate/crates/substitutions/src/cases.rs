//! Worked examples, one or more per substitution kind, with sample points in the target chart.

use series_core::{Complex64, LogCoord, LogPoint, MixedSeries};

use crate::kind::Substitution;

pub struct Case {
    pub name: &'static str,
    pub sigma: Substitution,
    pub f: MixedSeries,
    /// The expected σF, where it has a closed form.
    pub expected: Option<MixedSeries>,
    pub samples: Vec<(LogPoint, Vec<Complex64>)>,
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn series(m: usize, n: usize, terms: &[(&[f64], &[u32], f64)], xc: &[f64], yc: u32) -> MixedSeries {
    let terms = terms.iter().map(|(x, y, a)| (x.to_vec(), y.to_vec(), c(*a))).collect();
    MixedSeries::from_terms(m, n, terms, xc.to_vec(), yc).expect("valid example")
}

/// `count` points with Re w' in [−3, −0.5], |Im w'| ≤ 0.3 and |y'| ≤ y_max.
pub fn samples(m: usize, n: usize, count: usize, y_max: f64) -> Vec<(LogPoint, Vec<Complex64>)> {
    (0..count)
        .map(|s| {
            let t = s as f64 / count.max(2) as f64;
            let w = (0..m).map(|i| LogCoord::new(-3.0 + 2.5 * ((t + 0.37 * i as f64) % 1.0), 0.3 * (7.0 * t + i as f64).sin())).collect();
            let y = (0..n).map(|j| Complex64::from_polar(y_max * ((t + 0.21 * j as f64) % 1.0), 5.0 * t + j as f64)).collect();
            (LogPoint(w), y)
        })
        .collect()
}

pub fn examples() -> Vec<Case> {
    let inf = f64::INFINITY;
    let mut out = Vec::new();

    out.push(Case {
        name: "permutation",
        sigma: Substitution::permutation(2, 0, vec![1, 0]).expect("valid"),
        f: series(2, 0, &[(&[1.0, 0.0], &[], 1.0), (&[0.0, 0.5], &[], 2.0)], &[4.0, 4.0], 0),
        expected: Some(series(2, 0, &[(&[0.0, 1.0], &[], 1.0), (&[0.5, 0.0], &[], 2.0)], &[4.0, 4.0], 0)),
        samples: samples(2, 0, 20, 0.0),
    });
    out.push(Case {
        name: "ramification",
        sigma: Substitution::ramification(1, 0, 0, 2.0).expect("valid"),
        f: series(1, 0, &[(&[0.5], &[], 1.0), (&[1.0], &[], 1.0)], &[4.0], 0),
        expected: Some(series(1, 0, &[(&[1.0], &[], 1.0), (&[2.0], &[], 1.0)], &[8.0], 0)),
        samples: samples(1, 0, 20, 0.0),
    });
    out.push(Case {
        name: "ramification-affine",
        sigma: Substitution::ramification(1, 0, 0, 2.0).expect("valid"),
        f: series(1, 0, &[(&[0.0], &[], 1.0), (&[1.0], &[], 1.0)], &[4.0], 0),
        expected: Some(series(1, 0, &[(&[0.0], &[], 1.0), (&[2.0], &[], 1.0)], &[8.0], 0)),
        samples: samples(1, 0, 20, 0.0),
    });
    // X₂ ↦ X₁(1 + Y'), F = X₂^{1/2}.
    let yc = 16;
    let expected = (0..=yc as usize)
        .map(|i| (vec![0.5], vec![i as u32], c(crate::apply::binom(0.5, i))))
        .collect();
    out.push(Case {
        name: "regular-blow-up",
        sigma: Substitution::regular_blow_up(2, 0, 1, 0, 1.0).expect("valid"),
        f: series(2, 0, &[(&[0.0, 0.5], &[], 1.0)], &[4.0, 4.0], yc),
        expected: Some(MixedSeries::from_terms(1, 1, expected, vec![4.0], yc).expect("valid")),
        samples: samples(1, 1, 20, 0.05),
    });
    out.push(Case {
        name: "regular-blow-up-linear",
        sigma: Substitution::regular_blow_up(2, 0, 1, 0, 1.0).expect("valid"),
        f: series(2, 0, &[(&[0.0, 1.0], &[], 1.0)], &[4.0, 4.0], yc),
        expected: Some(series(1, 1, &[(&[1.0], &[0], 1.0), (&[1.0], &[1], 1.0)], &[4.0], yc)),
        samples: samples(1, 1, 20, 0.09),
    });
    out.push(Case {
        name: "singular-blow-up",
        sigma: Substitution::singular_blow_up(2, 0, 0, 1).expect("valid"),
        f: series(2, 0, &[(&[1.0, 0.0], &[], 1.0), (&[0.5, 1.5], &[], -3.0)], &[4.0, 4.0], 0),
        expected: Some(series(2, 0, &[(&[1.0, 1.0], &[], 1.0), (&[0.5, 2.0], &[], -3.0)], &[4.0, 4.0], 0)),
        samples: samples(2, 0, 20, 0.0),
    });
    // X ↦ 4 + Y', F = X^{1/2} = 2(1 + Y'/4)^{1/2}.
    let yc = 20;
    let expected = (0..=yc as usize).map(|i| (vec![], vec![i as u32], c(2.0 * crate::apply::binom(0.5, i) / 4f64.powi(i as i32)))).collect();
    out.push(Case {
        name: "translation",
        sigma: Substitution::translation(vec![4.0], vec![], vec![5.0], vec![], yc).expect("valid"),
        f: series(1, 0, &[(&[0.5], &[], 1.0)], &[inf], u32::MAX),
        expected: Some(MixedSeries::from_terms(0, 1, expected, vec![], yc).expect("valid")),
        samples: samples(0, 1, 20, 0.5),
    });
    out.push(Case {
        name: "infinitesimal",
        sigma: Substitution::infinitesimal(
            1,
            vec![series(1, 1, &[(&[1.0], &[0], 1.0), (&[0.0], &[2], 1.0)], &[2.0], 4)],
            vec![4.0],
            vec![1.0],
            vec![1.0],
        )
        .expect("valid"),
        f: series(1, 1, &[(&[0.0], &[2], 1.0)], &[4.0], 4),
        expected: Some(series(1, 1, &[(&[2.0], &[0], 1.0), (&[1.0], &[2], 2.0), (&[0.0], &[4], 1.0)], &[2.0], 4)),
        samples: samples(1, 1, 20, 0.5),
    });
    out.push(Case {
        name: "identify",
        sigma: Substitution::identify(2, 0, 1, 0).expect("valid"),
        f: series(2, 0, &[(&[1.0, 1.0], &[], 1.0)], &[4.0, 4.0], 0),
        expected: Some(series(1, 0, &[(&[2.0], &[], 1.0)], &[4.0], 0)),
        samples: samples(1, 0, 20, 0.0),
    });
    out.push(Case {
        name: "identify-sum",
        sigma: Substitution::identify(2, 0, 1, 0).expect("valid"),
        f: series(2, 0, &[(&[1.0, 0.0], &[], 1.0), (&[0.0, 1.0], &[], 1.0)], &[4.0, 4.0], 0),
        expected: Some(series(1, 0, &[(&[1.0], &[], 2.0)], &[4.0], 0)),
        samples: samples(1, 0, 20, 0.0),
    });
    out.push(Case {
        name: "set-zero",
        sigma: Substitution::set_zero(2, 0, 1).expect("valid"),
        f: series(2, 0, &[(&[0.0, 0.0], &[], 1.0), (&[1.0, 0.0], &[], 1.0), (&[0.0, 1.0], &[], 1.0)], &[4.0, 4.0], 0),
        expected: Some(series(1, 0, &[(&[0.0], &[], 1.0), (&[1.0], &[], 1.0)], &[4.0], 0)),
        samples: samples(1, 0, 20, 0.0),
    });
    out
}
