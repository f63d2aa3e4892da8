//! Summary and CSV output.
//!
//! JSON summaries carry a library/provenance header, the config echo,
//! and the experiment results; floats are formatted by
//! [`crate::jsonfmt`]. CSV files use '.' decimals, ',' separators and a
//! header row; complex values split into re/im columns.

use crate::config::ExperimentConfig;
use num_complex::Complex64;
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};
use tfzn_core::{CoeffArray, DecayProfile, Signal};

#[derive(Clone, Debug, Serialize)]
pub struct LibraryInfo {
    pub name: &'static str,
    pub version: &'static str,
    pub rng: &'static str,
}

impl LibraryInfo {
    pub fn current() -> Self {
        Self {
            name: "tfzn",
            version: env!("CARGO_PKG_VERSION"),
            rng: "chacha8",
        }
    }
}

/// Full summary document written by `run`.
#[derive(Serialize)]
pub struct Summary<'a, T: Serialize> {
    pub library: LibraryInfo,
    pub experiment: &'static str,
    pub seed: u64,
    pub config: &'a ExperimentConfig,
    pub results: T,
}

pub fn write_summary(path: &Path, json: &str) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(json.as_bytes())
}

fn csv_writer(path: &Path) -> std::io::Result<csv::Writer<std::fs::File>> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    Ok(csv::Writer::from_writer(std::fs::File::create(path)?))
}

fn fmt(v: f64) -> String {
    format!("{v}")
}

/// Matrix as `row,col,re,im` rows in row-major order.
pub fn write_matrix_csv(
    path: &Path,
    rows: usize,
    cols: usize,
    get: impl Fn(usize, usize) -> Complex64,
) -> std::io::Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["row", "col", "re", "im"])?;
    for r in 0..rows {
        for c in 0..cols {
            let v = get(r, c);
            w.write_record([r.to_string(), c.to_string(), fmt(v.re), fmt(v.im)])?;
        }
    }
    w.flush()
}

/// Decay profile as `mu_k,mu_l,h` in lattice order.
pub fn write_profile_csv(path: &Path, h: &DecayProfile) -> std::io::Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["mu_k", "mu_l", "h"])?;
    let lat = h.lattice();
    for idx in 0..lat.count() {
        let (k, l) = lat.unindex(idx);
        w.write_record([k.to_string(), l.to_string(), fmt(h.get(idx))])?;
    }
    w.flush()
}

/// Signal as `t,re,im`.
pub fn write_signal_csv(path: &Path, s: &Signal) -> std::io::Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["t", "re", "im"])?;
    for (t, v) in s.values().iter().enumerate() {
        w.write_record([t.to_string(), fmt(v.re), fmt(v.im)])?;
    }
    w.flush()
}

/// Coefficient array as `k,l,re,im` in lattice order.
pub fn write_coeffs_csv(path: &Path, c: &CoeffArray) -> std::io::Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["k", "l", "re", "im"])?;
    let lat = c.lattice();
    for idx in 0..lat.count() {
        let (k, l) = lat.unindex(idx);
        let v = c.values()[idx];
        w.write_record([k.to_string(), l.to_string(), fmt(v.re), fmt(v.im)])?;
    }
    w.flush()
}

/// Output paths of one run.
#[derive(Debug, Default)]
pub struct Artifacts {
    pub summary: Option<PathBuf>,
    pub files: Vec<PathBuf>,
}
