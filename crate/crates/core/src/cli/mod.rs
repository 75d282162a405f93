//! Experiment orchestration behind the `crsec` binary.

pub mod config;
pub mod plot;
pub mod table;

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

pub use config::{load_config, load_config_with, ConfigFile, ExperimentSpec, Overrides};
pub use table::{read_table, write_table, HEADER};

use crate::error::{Error, Result};
use crate::estimator::{sweep, with_workers, SweepTable};

/// Environment variable holding the worker count; unset or 0 means all cores.
pub const WORKERS_ENV: &str = "CRSEC_WORKERS";

/// Bundled experiment presets, keyed by name.
pub const PRESETS: [(&str, &str); 2] = [
    ("fig3", include_str!("../../presets/fig3.toml")),
    ("fig5", include_str!("../../presets/fig5.toml")),
];

pub fn workers_from_env() -> Result<usize> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("{WORKERS_ENV}={v} is not a worker count"))),
        _ => Ok(0),
    }
}

/// Process exit code for an error: 3 for I/O failures, 2 for everything else.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io { .. } => 3,
        _ => 2,
    }
}

/// Runs the sweep on `workers` threads (0 = all cores) and writes the CSV to
/// `spec.output_path`.
pub fn run_experiment(spec: &ExperimentSpec, workers: usize) -> Result<SweepTable> {
    let base = spec.check()?;
    let plan = spec.plan();
    let table = with_workers(workers, || sweep(&base, &plan))??;

    let path = &spec.output_path;
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    write_table(&table, &mut out).map_err(|e| match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    })?;
    out.flush().map_err(|e| Error::io(path, e))?;
    Ok(table)
}

pub fn emit_plot(csv_path: &Path, out_path: &Path) -> Result<()> {
    let file = File::open(csv_path).map_err(|e| Error::io(csv_path, e))?;
    let table = read_table(BufReader::new(file))?;
    let svg = plot::render_svg(&table)?;
    std::fs::write(out_path, svg).map_err(|e| Error::io(out_path, e))
}
