use log_geometry::LogRegion;
use resummation::models::euler_decomposition;
use resummation::{gevrey_check, TougeronDecomposition};
use series_core::Complex64;
use substitutions::cases::examples;
use substitutions::numeric_consistency;

use crate::table::{num, short};
use crate::{par_map, CliError, Grid, RunConfig, Table};

/// Gevrey estimates of `d` for β = 1, …, 10 on real w, with the fitted (D, E) as notes.
pub fn gevrey_table(d: &TougeronDecomposition, ws: &[f64]) -> Result<Table, CliError> {
    let grid: Vec<Complex64> = ws.iter().map(|w| Complex64::new(*w, 0.0)).collect();
    let betas: Vec<f64> = (1..=10).map(f64::from).collect();
    let rep = gevrey_check(d, &LogRegion::disk1(0.5f64.ln()), &betas, &grid).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut t = Table::new(&["beta", "max_q", "resolved", "slope", "ok"]);
    for r in &rep.rows {
        let slope = r.slope.map_or("-".to_string(), short);
        t.rows.push(vec![num(r.beta), short(r.max_q), r.resolved.to_string(), slope, r.ok.to_string()]);
    }
    t.notes.push(format!("D = {}, E = {}", num(rep.d), num(rep.e)));
    if !rep.holds {
        t.notes.push(format!("estimate fails for beta in {:?}", rep.failing));
    }
    t.ok = rep.holds;
    Ok(t)
}

pub fn cmd_gevrey(cfg: &RunConfig) -> Result<Table, CliError> {
    if !cfg.inputs.is_empty() {
        return Err(CliError::Usage("gevrey checks the bundled Euler decomposition and takes no input files".into()));
    }
    let d = euler_decomposition(30, 20).map_err(|e| CliError::Usage(e.to_string()))?;
    gevrey_table(&d, &cfg.grid_or(Grid::linear(-4.5, -1.0, 36)))
}

/// Numeric consistency of the bundled substitution examples; positional arguments select cases by name.
pub fn cmd_subst(cfg: &RunConfig) -> Result<Table, CliError> {
    let all = examples();
    let names: Vec<String> = cfg.inputs.iter().map(|p| p.display().to_string()).collect();
    if let Some(n) = names.iter().find(|n| !all.iter().any(|c| c.name == n.as_str())) {
        let known: Vec<&str> = all.iter().map(|c| c.name).collect();
        return Err(CliError::Usage(format!("unknown substitution example `{n}`; known: {}", known.join(", "))));
    }
    let cases: Vec<_> = all.into_iter().filter(|c| names.is_empty() || names.iter().any(|n| n == c.name)).collect();
    let results = par_map(cfg, &cases, |c| {
        let jet = match (&c.expected, c.sigma.apply(&c.f)) {
            (_, Err(e)) => Err(e),
            (Some(e), Ok(out)) => Ok(Some(out.max_rel_diff(e))),
            (None, Ok(_)) => Ok(None),
        };
        (jet, numeric_consistency(&c.sigma, &c.f, &c.samples))
    })?;
    let mut t = Table::new(&["case", "kind", "samples", "max_discrepancy", "jet", "status"]);
    for (c, (jet, rep)) in cases.iter().zip(results) {
        let (jet_cell, jet_ok) = match jet {
            Ok(Some(d)) => (if d <= 1e-15 { "match".to_string() } else { format!("differs by {}", short(d)) }, d <= 1e-15),
            Ok(None) => ("-".to_string(), true),
            Err(e) => (e.to_string(), false),
        };
        let row = match rep {
            Ok(r) => {
                let pass = jet_ok && r.max_discrepancy <= cfg.tol;
                t.ok &= pass;
                vec![r.samples.to_string(), short(r.max_discrepancy), jet_cell, if pass { "ok" } else { "fail" }.into()]
            }
            Err(e) => {
                t.ok = false;
                vec!["0".into(), "inf".into(), jet_cell, e.to_string()]
            }
        };
        t.rows.push([vec![c.name.to_string(), c.sigma.name().to_string()], row].concat());
    }
    Ok(t)
}
