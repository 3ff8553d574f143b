//! Library side of the `gps-resum` command: configuration, the commands as functions returning
//! tables, and the bundled example series.

pub mod commands;
pub mod config;
pub mod data;
pub mod table;

use std::path::{Path, PathBuf};

use series_core::{parse_gps, GpsDocument, SeriesError};

pub use commands::{binet_inner, cmd_eval, cmd_gamma, cmd_gevrey, cmd_multisum, cmd_roundtrip, cmd_subst, cmd_zeta, gevrey_table, log_gamma, zeta};
pub use config::{Command, Format, Grid, RunConfig};
pub use table::Table;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: SeriesError },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// Reads a `.gps` file, falling back to a bundled example of the same name.
pub fn load_document(path: &Path) -> Result<GpsDocument, CliError> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => match data::bundled(&path.to_string_lossy()) {
            Some(t) => t.to_string(),
            None => return Err(CliError::Io { path: path.to_path_buf(), source: e }),
        },
    };
    parse_gps(&text).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

/// Maps `f` over `items` on a pool of the configured size; results stay in input order.
pub(crate) fn par_map<T: Sync, U: Send>(cfg: &RunConfig, items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Result<Vec<U>, CliError> {
    use rayon::prelude::*;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.resolved_threads()? {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))?;
    Ok(pool.install(|| items.par_iter().map(&f).collect()))
}

/// Runs the configured command; the table's `ok` decides between exit codes 0 and 1.
pub fn run(cfg: &RunConfig) -> Result<Table, CliError> {
    cfg.validate()?;
    match cfg.command {
        Command::Eval => cmd_eval(cfg),
        Command::Multisum => cmd_multisum(cfg),
        Command::Gamma => cmd_gamma(cfg),
        Command::Zeta => cmd_zeta(cfg),
        Command::Gevrey => cmd_gevrey(cfg),
        Command::Roundtrip => cmd_roundtrip(cfg),
        Command::Subst => cmd_subst(cfg),
    }
}
