use series_core::{Complex64, MixedKey, MixedSeries, MERGE_TOL};

use crate::error::SubstError;

/// F = G·H with G a unit and H monic of degree d in the last convergent variable.
///
/// F is read as the polynomial given by its jet. The division Y_n^d = Q·F + R is carried out modulo a weighted
/// order ω = deg Y_n + d·(deg Y' + Σ α_i/μ_i), with μ_i the smallest positive exponent of X_i in F, in which every
/// division step is exact; the weight bound is chosen so that G and H are exact on the jet of F.
pub fn weierstrass_prepare(f: &MixedSeries, d: u32) -> Result<(MixedSeries, MixedSeries), SubstError> {
    let (m, n) = (f.gevrey(), f.convergent());
    if n == 0 {
        return Err(SubstError::NonNormal("Weierstrass preparation needs a convergent variable".into()));
    }
    let last = n - 1;
    let (xc, yc) = (f.x_cutoff().to_vec(), f.y_degree_cutoff());
    let on_axis = |k: &MixedKey| k.x.is_zero() && k.y[..last].iter().all(|&b| b == 0);
    let f0 = f.map_keys(m, n, xc.clone(), yc, |k| on_axis(k).then(|| k.clone()));
    let order = f0.terms().map(|(k, _)| k.y[last]).min();
    if order != Some(d) || d > yc {
        let jet = f0.terms().map(|(k, c)| format!("({c})·Y^{}", k.y[last])).collect::<Vec<_>>().join(" + ");
        return Err(SubstError::NotRegular { d, jet: if jet.is_empty() { "0".into() } else { jet } });
    }
    if d == 0 {
        return Ok((f.clone(), MixedSeries::one(m, n, xc, yc)));
    }
    if yc == u32::MAX {
        return Err(SubstError::InfiniteWork("Weierstrass preparation needs a finite Y cutoff".into()));
    }
    let dd = d as f64;
    let mu: Vec<Option<f64>> = (0..m).map(|i| f.min_positive_x(i)).collect();
    for (i, mi) in mu.iter().enumerate() {
        if mi.is_some() && xc[i].is_infinite() {
            return Err(SubstError::InfiniteWork(format!("X_{i} occurs in F but its cutoff is infinite")));
        }
    }
    let weight = |k: &MixedKey| -> f64 {
        let y: u32 = k.y[..last].iter().sum();
        let x: f64 = mu.iter().enumerate().filter_map(|(i, mi)| mi.map(|mi| k.x_value(i) / mi)).sum();
        k.y[last] as f64 + dd * (y as f64 + x)
    };
    // Largest weight on the jet of F.
    let y_top = if n > 1 { (dd.max(1.0) * yc as f64).max(yc as f64) } else { yc as f64 };
    let x_top: f64 = mu.iter().enumerate().filter_map(|(i, mi)| mi.map(|mi| xc[i] / mi)).sum();
    let top = y_top + dd * x_top;
    let cap = top + dd;
    let xi: Vec<f64> = (0..m).map(|i| mu[i].map_or(xc[i], |mi| cap * mi / dd.max(1.0))).collect();
    let yi = cap.ceil() as u32;
    let trim = |s: &MixedSeries| s.map_keys(m, n, xi.clone(), yi, |k| (weight(k) <= cap + MERGE_TOL).then(|| k.clone()));
    let mul = |a: &MixedSeries, b: &MixedSeries| -> Result<MixedSeries, SubstError> { Ok(trim(&a.mul(b)?)) };
    let invert = |a: &MixedSeries| -> Result<MixedSeries, SubstError> {
        let c0 = a.constant_term();
        let e = a.scale(-c0.inv()).add(&MixedSeries::one(m, n, xi.clone(), yi))?;
        let mut acc = MixedSeries::one(m, n, xi.clone(), yi);
        let mut power = acc.clone();
        while !power.is_zero() {
            power = mul(&power, &e)?;
            acc = acc.add(&power)?;
        }
        Ok(acc.scale(c0.inv()))
    };

    let fw = f.with_cutoffs(xi.clone(), yi);
    let f0w = f0.with_cutoffs(xi.clone(), yi);
    let f1 = fw.sub(&f0w)?;
    let shift_down = |a: &MixedSeries| {
        a.map_keys(m, n, xi.clone(), yi, |k| {
            (k.y[last] >= d).then(|| {
                let mut k = k.clone();
                k.y[last] -= d;
                k
            })
        })
    };
    let low = |a: &MixedSeries| a.map_keys(m, n, xi.clone(), yi, |k| (k.y[last] < d).then(|| k.clone()));
    let e_inv = invert(&shift_down(&f0w))?;
    let mut yd_key = vec![0; n];
    yd_key[last] = d;
    let yd = MixedSeries::from_terms(m, n, vec![(vec![0.0; m], yd_key, Complex64::new(1.0, 0.0))], xi.clone(), yi)?;
    let mut a = yd.clone();
    let mut q = MixedSeries::zero(m, n, xi.clone(), yi);
    let mut r = q.clone();
    // Each step raises the (X, Y') part of the weight by at least d.
    let steps = (cap / dd.max(1.0)).ceil() as usize + 2;
    for _ in 0..=steps {
        if a.is_zero() {
            let g = invert(&q)?.with_cutoffs(xc.clone(), yc);
            let h = yd.sub(&r)?.with_cutoffs(xc, yc);
            return Ok((g, h));
        }
        let qi = mul(&shift_down(&a), &e_inv)?;
        r = r.add(&low(&a))?;
        a = mul(&qi, &f1)?.neg();
        q = q.add(&qi)?;
    }
    Err(SubstError::InfiniteWork(format!("division by F did not terminate in {steps} steps")))
}
