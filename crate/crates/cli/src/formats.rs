//! On-disk formats for states, observables, and grid wavefunctions.
//!
//! Everything is JSON with floats printed at 17 significant digits, so a
//! file written by this tool re-parses to bit-identical values. Complex
//! numbers are `[re, im]` pairs. Large grids may keep their samples in a
//! sidecar CSV (`re,im` per row, row-major with the last axis fastest)
//! referenced from the JSON header; small ones can inline them.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use effnum_core::continuum::GridWavefunction;
use effnum_core::quantum::{Observable, QuantumState};
use effnum_core::tol;

use crate::error::CliError;
use crate::report;

/// A pure state: `n` amplitudes in a fixed reference basis.
#[derive(Debug, Serialize, Deserialize)]
pub struct StateFile {
    /// Dimension of the state space.
    pub n: usize,
    /// Complex amplitudes as `[re, im]`, one per basis vector.
    pub amplitudes: Vec<[f64; 2]>,
}

/// A Hermitian observable: the full `n x n` matrix, row by row.
#[derive(Debug, Serialize, Deserialize)]
pub struct ObservableFile {
    /// Matrix dimension.
    pub n: usize,
    /// Rows of complex entries as `[re, im]`.
    pub matrix: Vec<Vec<[f64; 2]>>,
}

/// A grid wavefunction header; samples live inline or in a sidecar CSV
/// whose path resolves relative to the header file.
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridFile {
    /// Samples embedded in the JSON itself.
    Inline {
        /// Cells per axis.
        dims: Vec<usize>,
        /// Cell edge length per axis.
        spacing: Vec<f64>,
        /// Row-major complex samples as `[re, im]`.
        samples: Vec<[f64; 2]>,
    },
    /// Samples in a separate CSV file of `re,im` rows.
    External {
        /// Cells per axis.
        dims: Vec<usize>,
        /// Cell edge length per axis.
        spacing: Vec<f64>,
        /// CSV path, relative to the header file's directory.
        samples_csv: String,
    },
}

fn read_to_string(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn parse_json<'a, T: Deserialize<'a>>(path: &Path, text: &'a str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn complex_pairs(pairs: &[[f64; 2]]) -> Vec<Complex64> {
    pairs.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

/// Loads and validates a normalized state.
pub fn load_state(path: &Path) -> Result<QuantumState, CliError> {
    let text = read_to_string(path)?;
    let file: StateFile = parse_json(path, &text)?;
    if file.amplitudes.len() != file.n {
        return Err(CliError::input(format!(
            "{}: header says n = {} but {} amplitudes follow",
            path.display(),
            file.n,
            file.amplitudes.len()
        )));
    }
    QuantumState::new(complex_pairs(&file.amplitudes))
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// Writes a state so that re-loading reproduces its amplitudes exactly.
pub fn write_state(path: &Path, state: &QuantumState) -> Result<(), CliError> {
    let file = StateFile {
        n: state.dim(),
        amplitudes: state.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
    };
    write_bytes(path, &report::to_json_bytes(&file)?)
}

/// Loads and validates a Hermitian observable.
pub fn load_observable(path: &Path) -> Result<Observable, CliError> {
    let text = read_to_string(path)?;
    let file: ObservableFile = parse_json(path, &text)?;
    if file.matrix.len() != file.n || file.matrix.iter().any(|row| row.len() != file.n) {
        return Err(CliError::input(format!(
            "{}: matrix must be {n} rows of {n} entries",
            path.display(),
            n = file.n
        )));
    }
    let mut elements = Vec::with_capacity(file.n * file.n);
    for row in &file.matrix {
        elements.extend(row.iter().map(|&[re, im]| Complex64::new(re, im)));
    }
    Observable::new(file.n, elements)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// Loads a grid wavefunction, following a sidecar CSV if the header points
/// to one. Files written by this tool were normalized on their own grid, so
/// the strict normalization band applies.
pub fn load_grid(path: &Path) -> Result<GridWavefunction, CliError> {
    let text = read_to_string(path)?;
    let file: GridFile = parse_json(path, &text)?;
    let (dims, spacing, samples) = match file {
        GridFile::Inline {
            dims,
            spacing,
            samples,
        } => (dims, spacing, complex_pairs(&samples)),
        GridFile::External {
            dims,
            spacing,
            samples_csv,
        } => {
            let csv_path = sibling(path, &samples_csv);
            (dims, spacing, read_samples_csv(&csv_path)?)
        }
    };
    GridWavefunction::new(dims, spacing, samples, tol::TAU_CONT_FILE)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// Writes a grid with its samples inline.
pub fn write_grid_inline(path: &Path, grid: &GridWavefunction) -> Result<(), CliError> {
    let file = GridFile::Inline {
        dims: grid.dims().to_vec(),
        spacing: grid.spacing().to_vec(),
        samples: grid.samples().iter().map(|z| [z.re, z.im]).collect(),
    };
    write_bytes(path, &report::to_json_bytes(&file)?)
}

/// Writes a grid as a JSON header plus a sidecar CSV named `csv_name`,
/// placed next to the header.
pub fn write_grid_csv(path: &Path, csv_name: &str, grid: &GridWavefunction) -> Result<(), CliError> {
    let csv_path = sibling(path, csv_name);
    let mut writer = csv::Writer::from_path(&csv_path)
        .map_err(|e| CliError::input(format!("{}: {e}", csv_path.display())))?;
    writer
        .write_record(["re", "im"])
        .map_err(|e| CliError::input(format!("{}: {e}", csv_path.display())))?;
    for z in grid.samples() {
        writer
            .write_record([report::float17(z.re), report::float17(z.im)])
            .map_err(|e| CliError::input(format!("{}: {e}", csv_path.display())))?;
    }
    writer
        .flush()
        .map_err(|e| CliError::input(format!("{}: {e}", csv_path.display())))?;
    let header = GridFile::External {
        dims: grid.dims().to_vec(),
        spacing: grid.spacing().to_vec(),
        samples_csv: csv_name.to_string(),
    };
    write_bytes(path, &report::to_json_bytes(&header)?)
}

fn read_samples_csv(path: &Path) -> Result<Vec<Complex64>, CliError> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let mut samples = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        if record.len() != 2 {
            return Err(CliError::input(format!(
                "{}: row {} has {} fields, expected re,im",
                path.display(),
                row + 2,
                record.len()
            )));
        }
        let parse = |field: &str| {
            field.trim().parse::<f64>().map_err(|e| {
                CliError::input(format!("{}: row {}: {e}", path.display(), row + 2))
            })
        };
        samples.push(Complex64::new(parse(&record[0])?, parse(&record[1])?));
    }
    Ok(samples)
}

fn sibling(header: &Path, name: &str) -> PathBuf {
    let candidate = Path::new(name);
    if candidate.is_absolute() {
        candidate.to_path_buf()
    } else {
        header.parent().unwrap_or(Path::new(".")).join(candidate)
    }
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}
