//! File formats: signal/spectrum CSV with a JSON grid sidecar, two-column
//! weight tables, atom lists, and atomic writes with fixed float formatting
//! (17 significant digits) so identical runs produce identical bytes.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Grid, Signal, Spectrum};
use crate::weights::{WeightKind, WeightSpec};

/// 17 significant digits, locale-free.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Write via a temp file in the same directory, then rename.
pub fn atomic_write(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.tmp",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("artifact")
    ));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
struct GridSidecar {
    halfwidth: f64,
    step: f64,
    count: usize,
}

fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("grid.json")
}

fn write_samples_csv(path: &Path, grid: &Grid, values: &[Complex64]) -> Result<()> {
    let mut out = String::from("xi,re,im\n");
    for (xi, v) in grid.points().zip(values) {
        out.push_str(&format!("{},{},{}\n", fmt_float(xi), fmt_float(v.re), fmt_float(v.im)));
    }
    atomic_write(path, out.as_bytes())?;
    let sidecar = GridSidecar { halfwidth: grid.halfwidth(), step: grid.step(), count: grid.count() };
    atomic_write(
        &sidecar_path(path),
        serde_json::to_string_pretty(&sidecar)
            .map_err(|e| Error::config(e.to_string()))?
            .as_bytes(),
    )
}

fn read_samples_csv(path: &Path) -> Result<(Grid, Vec<Complex64>)> {
    let sidecar: GridSidecar = serde_json::from_str(&fs::read_to_string(sidecar_path(path))?)
        .map_err(|e| Error::config(format!("bad grid sidecar for {}: {e}", path.display())))?;
    let grid = Grid::new(sidecar.halfwidth, sidecar.step)?;
    if grid.count() != sidecar.count {
        return Err(Error::config(format!(
            "sidecar count {} disagrees with 2L/h = {}",
            sidecar.count,
            grid.count()
        )));
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| Error::config(format!("{}: {e}", path.display())))?;
    let mut values = Vec::with_capacity(grid.count());
    for record in reader.records() {
        let record = record.map_err(|e| Error::config(e.to_string()))?;
        if record.len() < 3 {
            return Err(Error::config("sample rows need xi,re,im columns"));
        }
        let re: f64 = record[1].trim().parse().map_err(|e| Error::config(format!("{e}")))?;
        let im: f64 = record[2].trim().parse().map_err(|e| Error::config(format!("{e}")))?;
        values.push(Complex64::new(re, im));
    }
    if values.len() != grid.count() {
        return Err(Error::config(format!(
            "{} has {} samples, grid wants {}",
            path.display(),
            values.len(),
            grid.count()
        )));
    }
    Ok((grid, values))
}

pub fn write_signal_csv(path: &Path, signal: &Signal) -> Result<()> {
    write_samples_csv(path, &signal.grid, &signal.values)
}

pub fn read_signal_csv(path: &Path) -> Result<Signal> {
    let (grid, values) = read_samples_csv(path)?;
    Signal::new(grid, values)
}

pub fn write_spectrum_csv(path: &Path, spectrum: &Spectrum) -> Result<()> {
    write_samples_csv(path, &spectrum.grid, &spectrum.values)
}

pub fn read_spectrum_csv(path: &Path) -> Result<Spectrum> {
    let (grid, values) = read_samples_csv(path)?;
    Spectrum::new(grid, values)
}

/// Two-column `(xi, w)` weight table with strictly increasing, uniformly
/// spaced xi (enforced to 1e-9 relative).
pub fn read_weight_table_csv(path: &Path, domain_halfwidth: f64) -> Result<WeightSpec> {
    let text = fs::read_to_string(path)?;
    let mut xs = Vec::new();
    let mut ws = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let a = parts.next().map(str::trim);
        let b = parts.next().map(str::trim);
        let (Some(a), Some(b)) = (a, b) else {
            return Err(Error::config(format!("line {}: need xi,w", lineno + 1)));
        };
        if lineno == 0 && a.parse::<f64>().is_err() {
            continue; // header row
        }
        let xi: f64 = a.parse().map_err(|e| Error::config(format!("line {}: {e}", lineno + 1)))?;
        let w: f64 = b.parse().map_err(|e| Error::config(format!("line {}: {e}", lineno + 1)))?;
        xs.push(xi);
        ws.push(w);
    }
    if xs.len() < 2 {
        return Err(Error::config("weight table needs at least two rows"));
    }
    let step = xs[1] - xs[0];
    if step <= 0.0 {
        return Err(Error::config("table xi must be strictly increasing"));
    }
    for k in 1..xs.len() {
        let gap = xs[k] - xs[k - 1];
        if gap <= 0.0 || (gap - step).abs() > 1e-9 * step.abs() {
            return Err(Error::config(format!(
                "table spacing not uniform at row {}: {} vs {}",
                k + 1,
                gap,
                step
            )));
        }
    }
    WeightSpec::new(WeightKind::Table { start: xs[0], step, values: ws }, domain_halfwidth)
}

/// Atom list CSV rows `(alpha, tau)`.
pub fn write_atoms_csv(path: &Path, atoms: &[(f64, f64)]) -> Result<()> {
    let mut out = String::from("alpha,tau\n");
    for (a, t) in atoms {
        out.push_str(&format!("{},{}\n", fmt_float(*a), fmt_float(*t)));
    }
    atomic_write(path, out.as_bytes())
}

pub fn read_atoms_csv(path: &Path) -> Result<Vec<(f64, f64)>> {
    let text = fs::read_to_string(path)?;
    let mut atoms = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let (Some(a), Some(t)) = (parts.next(), parts.next()) else {
            return Err(Error::config(format!("line {}: need alpha,tau", lineno + 1)));
        };
        if lineno == 0 && a.trim().parse::<f64>().is_err() {
            continue;
        }
        atoms.push((
            a.trim().parse().map_err(|e| Error::config(format!("line {}: {e}", lineno + 1)))?,
            t.trim().parse().map_err(|e| Error::config(format!("line {}: {e}", lineno + 1)))?,
        ));
    }
    Ok(atoms)
}

/// Serialize any report as pretty JSON via an atomic write.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let body = serde_json::to_string_pretty(value).map_err(|e| Error::config(e.to_string()))?;
    atomic_write(path, body.as_bytes())
}
