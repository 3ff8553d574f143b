use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gps_resum::{run, Command, Format, Grid, RunConfig};

/// Evaluate, resum and check generalized power series.
#[derive(Parser, Debug)]
#[command(name = "gps-resum", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Tolerance for checks and admissibility.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Grid `<a>:<b>:<n>[:log]` of w, x or s, depending on the command.
    #[arg(long)]
    grid: Option<Grid>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads; defaults to GPS_RESUM_THREADS, then the number of CPUs.
    #[arg(long)]
    threads: Option<usize>,
    /// Report log-sums outside the certified region instead of failing.
    #[arg(long)]
    uncertified: bool,
    /// Comma-separated Gevrey levels K for `multisum`.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    levels: Vec<f64>,
    /// Input `.gps` files (bundled examples may be named directly); case names for `subst`.
    files: Vec<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        command: cli.command,
        inputs: cli.files,
        tol: cli.tol,
        grid: cli.grid,
        format: cli.format,
        threads: cli.threads,
        uncertified: cli.uncertified,
        levels: cli.levels,
    };
    match run(&cfg) {
        Ok(table) => {
            let out = table.render(cfg.format);
            print!("{out}");
            if cfg.format == Format::Csv {
                for n in &table.notes {
                    eprintln!("# {n}");
                }
            }
            ExitCode::from(if table.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("gps-resum: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
