use resummation::{multisum, MultisumOptions};
use series_core::{LogCoord, LogPoint};
use transforms_numeric::{borel_function, log_laplace, LogFunction, TransformOptions};

use super::{documents, one_variable};
use crate::table::{num, short};
use crate::{data, par_map, CliError, Grid, RunConfig, Table};

/// Log-sums of one-variable files at w on the grid: (w, Re, Im, bound).
pub fn cmd_eval(cfg: &RunConfig) -> Result<Table, CliError> {
    let ws = cfg.grid_or(Grid::linear(-4.0, -1.0, 7));
    let mut t = Table::new(&["file", "w", "re", "im", "bound", "status"]);
    for (name, doc) in documents(cfg, &[])? {
        let f = one_variable(&name, &doc)?;
        let vals = par_map(cfg, &ws, |&w| f.eval_logsum(&LogPoint::reals(&[w])))?;
        for (w, v) in ws.iter().zip(vals) {
            let row = match v {
                Ok(s) => {
                    let status = if s.certified {
                        "ok"
                    } else if cfg.uncertified {
                        "uncertified"
                    } else {
                        t.ok = false;
                        "outside certified region"
                    };
                    vec![num(s.value.re), num(s.value.im), num(s.error), status.to_string()]
                }
                Err(e) => {
                    t.ok = false;
                    vec!["nan".into(), "nan".into(), "inf".into(), e.to_string()]
                }
            };
            t.rows.push([vec![name.clone(), num(*w)], row].concat());
        }
    }
    Ok(t)
}

/// Multisums at x on the grid with w = log x; rows whose bound exceeds the tolerance are flagged.
pub fn cmd_multisum(cfg: &RunConfig) -> Result<Table, CliError> {
    let xs = cfg.grid_or(Grid::linear(0.05, 0.2, 4));
    if let Some(x) = xs.iter().find(|x| !(**x > 0.0)) {
        return Err(CliError::Usage(format!("multisum needs x > 0, got {x}")));
    }
    let mut t = Table::new(&["file", "x", "re", "im", "bound", "certified", "status"]);
    for (name, doc) in documents(cfg, &[])? {
        let f = one_variable(&name, &doc)?;
        let opts = MultisumOptions { tol: f64::INFINITY, growth: doc.growth.map(|g| (g.c, g.d)), ..MultisumOptions::default() };
        let vals = par_map(cfg, &xs, |&x| multisum(&f, &cfg.levels, LogCoord::real(x.ln()), &opts))?;
        for (x, v) in xs.iter().zip(vals) {
            let row = match v {
                Ok(r) => {
                    let admissible = r.error_bound <= cfg.tol;
                    t.ok &= admissible;
                    let status = if admissible { "ok" } else { "inadmissible: bound exceeds tolerance" };
                    vec![num(r.value.re), num(r.value.im), num(r.error_bound), r.certified.to_string(), status.to_string()]
                }
                Err(e) => {
                    t.ok = false;
                    vec!["nan".into(), "nan".into(), "inf".into(), "false".into(), e.to_string()]
                }
            };
            t.rows.push([vec![name.clone(), num(*x)], row].concat());
        }
    }
    Ok(t)
}

/// Compares 𝓛(𝓑f) + f(−∞) with the log-sum f on the grid for convergent files.
pub fn cmd_roundtrip(cfg: &RunConfig) -> Result<Table, CliError> {
    let ws = cfg.grid_or(Grid::linear(-4.0, -1.5, 10));
    let opts = TransformOptions::default();
    let mut t = Table::new(&["file", "w", "laplace_borel", "direct", "diff", "bound", "status"]);
    for (name, doc) in documents(cfg, &data::CONVERGENT)? {
        let f = one_variable(&name, &doc)?;
        let lf = LogFunction::from_series(&f).map_err(|e| CliError::Usage(format!("{name}: {e}")))?;
        let bf = match borel_function(&lf, None, &opts) {
            Ok(b) => b,
            Err(e) => {
                t.ok = false;
                t.notes.push(format!("{name}: {e}"));
                continue;
            }
        };
        let f0 = lf.at_origin();
        let vals = par_map(cfg, &ws, |&w| {
            let direct = lf.eval(LogCoord::real(w));
            log_laplace(&bf, LogCoord::real(w), 0.0, None, &opts).map(|q| (q.value + f0, direct.value, q.total_error() + direct.err))
        })?;
        for (w, v) in ws.iter().zip(vals) {
            let row = match v {
                Ok((lb, direct, bound)) => {
                    let diff = (lb - direct).norm();
                    let pass = diff <= cfg.tol;
                    t.ok &= pass;
                    vec![num(lb.re), num(direct.re), short(diff), short(bound), if pass { "ok" } else { "mismatch" }.to_string()]
                }
                Err(e) => {
                    t.ok = false;
                    vec!["nan".into(), "nan".into(), "inf".into(), "inf".into(), e.to_string()]
                }
            };
            t.rows.push([vec![name.clone(), num(*w)], row].concat());
        }
    }
    Ok(t)
}
