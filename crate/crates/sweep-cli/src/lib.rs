//! Phase-diagram sweeps over two model parameters, with CSV and P6 heatmap
//! export, and the `topoinv` command-line front end.

pub mod cli;
mod config;
mod export;
mod params;
mod sweep;

use std::path::PathBuf;

pub use config::{check_grid, default_partition, parse_partition, Axis, Quantity, SweepConfig, Thresholds};
pub use export::{
    csv_header, diverging_color, export_csv, export_heatmap, format_float, heatmap_pixels, sequential_color, write_csv,
    write_ppm, Rgb, FAILURE_COLOR, MISSING, STATUS_OK,
};
pub use params::{parameter_defaults, ratio_parameters, target_parameter, ModelParams};
pub use sweep::{
    evaluate_cell, run_sweep, CellRecord, PhaseDiagram, UNRESOLVED, WARN_ADDITIVITY, WARN_HIGH_ENTANGLEMENT,
};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "TOPOINV_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Compute(#[from] topoinv_bz::Error),
}

impl CliError {
    /// 2 for numerical failures, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(e) if e.is_numerical() => 2,
            _ => 1,
        }
    }
}

/// Worker count: `TOPOINV_THREADS` when set, otherwise the available parallelism.
pub fn thread_count() -> Result<usize, CliError> {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(available),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Config(format!("{THREADS_ENV} must be a positive integer, got '{s}'"))),
        },
    }
}
