mod checks;
mod evaluate;
mod special;

pub use checks::{cmd_gevrey, cmd_subst, gevrey_table};
pub use evaluate::{cmd_eval, cmd_multisum, cmd_roundtrip};
pub use special::{binet_inner, cmd_gamma, cmd_zeta, log_gamma, zeta};

use series_core::{GenSeries, GpsDocument};

use crate::{data, load_document, CliError, RunConfig};

/// The configured input files, or the named bundled examples when none are given.
fn documents(cfg: &RunConfig, defaults: &[&str]) -> Result<Vec<(String, GpsDocument)>, CliError> {
    if cfg.inputs.is_empty() {
        if defaults.is_empty() {
            return Err(CliError::Usage("no input files".into()));
        }
        return defaults.iter().map(|n| Ok((n.to_string(), load_document(n.as_ref())?))).collect();
    }
    cfg.inputs.iter().map(|p| Ok((p.display().to_string(), load_document(p)?))).collect()
}

fn one_variable(name: &str, doc: &GpsDocument) -> Result<GenSeries, CliError> {
    if doc.vars != 1 || doc.yvars != 0 {
        return Err(CliError::Usage(format!("{name}: expected vars=1 yvars=0, found vars={} yvars={}", doc.vars, doc.yvars)));
    }
    doc.to_gen_series().map_err(|source| CliError::Parse { path: name.into(), source })
}

fn bundled_series(name: &str) -> GenSeries {
    let doc = series_core::parse_gps(data::bundled(name).expect("bundled example")).expect("bundled example parses");
    doc.to_gen_series().expect("bundled example is a one-variable series")
}
