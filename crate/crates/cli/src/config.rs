use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use series_core::gps::parse_real;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Eval,
    Multisum,
    Gamma,
    Zeta,
    Gevrey,
    Roundtrip,
    Subst,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
}

/// `start:stop:count[:log]`; a count of 0 is the empty grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub log: bool,
}

impl Grid {
    pub fn linear(start: f64, stop: f64, count: usize) -> Grid {
        Grid { start, stop, count, log: false }
    }

    pub fn points(&self) -> Vec<f64> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.start],
            n => (0..n)
                .map(|j| {
                    let t = j as f64 / (n - 1) as f64;
                    if j == n - 1 {
                        self.stop
                    } else if self.log {
                        (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp()
                    } else {
                        self.start + t * (self.stop - self.start)
                    }
                })
                .collect(),
        }
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Grid, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let log = match parts.get(3) {
            None => false,
            Some(&"log") => true,
            Some(other) => return Err(format!("unknown grid spacing `{other}`")),
        };
        if parts.len() < 3 || parts.len() > 4 {
            return Err(format!("expected `<a>:<b>:<n>[:log]`, found `{s}`"));
        }
        let num = |t: &str| parse_real(t).filter(|v| v.is_finite()).ok_or_else(|| format!("invalid grid bound `{t}`"));
        let (start, stop) = (num(parts[0])?, num(parts[1])?);
        let count = parts[2].parse().map_err(|_| format!("invalid grid count `{}`", parts[2]))?;
        if log && !(start > 0.0 && stop > 0.0) {
            return Err("a log grid needs positive bounds".into());
        }
        Ok(Grid { start, stop, count, log })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub inputs: Vec<PathBuf>,
    pub tol: f64,
    pub grid: Option<Grid>,
    pub format: Format,
    pub threads: Option<usize>,
    pub uncertified: bool,
    /// Gevrey levels K for `multisum`.
    pub levels: Vec<f64>,
}

impl RunConfig {
    pub fn new(command: Command) -> RunConfig {
        RunConfig {
            command,
            inputs: Vec::new(),
            tol: 1e-8,
            grid: None,
            format: Format::Table,
            threads: None,
            uncertified: false,
            levels: vec![1.0],
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tol > 0.0) {
            return Err(CliError::Usage(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.threads == Some(0) {
            return Err(CliError::Usage("thread count must be at least 1".into()));
        }
        Ok(())
    }

    pub fn grid_or(&self, default: Grid) -> Vec<f64> {
        self.grid.unwrap_or(default).points()
    }

    /// The explicit thread count, else `GPS_RESUM_THREADS`, else rayon's default.
    pub fn resolved_threads(&self) -> Result<Option<usize>, CliError> {
        if self.threads.is_some() {
            return Ok(self.threads);
        }
        match std::env::var("GPS_RESUM_THREADS") {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(n) if n > 0 => Ok(Some(n)),
                _ => Err(CliError::Usage(format!("GPS_RESUM_THREADS must be a positive integer, got `{v}`"))),
            },
            Err(_) => Ok(None),
        }
    }
}
