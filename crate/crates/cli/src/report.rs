//! Report structures and deterministic serialization.
//!
//! Reports are JSON with a fixed field order and every float printed at 17
//! significant digits (scientific notation), the shortest width that
//! round-trips any IEEE double. Identical inputs therefore produce
//! byte-identical reports, except for the `timing_ms` field, which is
//! explicitly excluded from that guarantee. A flat `field,value` CSV
//! rendering is available for spreadsheet use; tabular scans have their own
//! purpose-built CSV schema.

use std::collections::BTreeMap;
use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use effnum_core::axioms::{AxiomReport, GeneratorConfig};
use effnum_core::counting::CountingVector;
use effnum_core::enf;

use crate::error::CliError;

/// Renyi orders evaluated when the user does not pass `--alpha`.
pub const DEFAULT_ALPHAS: [f64; 3] = [0.5, 2.0, 3.0];

/// One evaluated Renyi order.
#[derive(Debug, Serialize)]
pub struct RenyiEntry {
    /// The order.
    pub alpha: f64,
    /// The exponentiated Renyi entropy at that order.
    pub value: f64,
}

/// Every counting quantifier evaluated on one counting vector.
#[derive(Debug, Serialize)]
pub struct QuantifierBlock {
    /// Minimal effective number.
    pub n_star: f64,
    /// Number of entries above the numeric-zero threshold.
    pub support_count: f64,
    /// Inverse sum of squared probabilities.
    pub participation_number: f64,
    /// Exponentiated Shannon entropy.
    pub exp_shannon: f64,
    /// Exponentiated Renyi entropies, one per requested order.
    pub exp_renyi: Vec<RenyiEntry>,
}

impl QuantifierBlock {
    /// Evaluates all quantifiers, guarding the sandwich
    /// `n_star <= support_count`: a report that would break it is never
    /// emitted (only states carrying weight below the numeric-zero
    /// threshold can manufacture that, and they deserve a diagnostic
    /// rather than an inconsistent report).
    pub fn evaluate(w: &CountingVector, alphas: &[f64]) -> Result<Self, CliError> {
        let n_star = enf::n_star(w);
        let support_count = enf::support_count(w);
        if n_star > support_count {
            return Err(CliError::numeric(format!(
                "effective number {n_star} exceeds support count {support_count}: \
                 the vector carries weight below the zero threshold"
            )));
        }
        let mut exp_renyi = Vec::with_capacity(alphas.len());
        for &alpha in alphas {
            let value = enf::exp_renyi(w, alpha).map_err(CliError::input)?;
            exp_renyi.push(RenyiEntry { alpha, value });
        }
        Ok(Self {
            n_star,
            support_count,
            participation_number: enf::participation_number(w),
            exp_shannon: enf::exp_shannon(w),
            exp_renyi,
        })
    }
}

/// What the report was computed from.
#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputInfo {
    /// A state file.
    State {
        /// The file path as given.
        path: String,
        /// State-space dimension.
        n: usize,
    },
    /// A grid wavefunction file.
    Grid {
        /// The file path as given.
        path: String,
        /// Cells per axis.
        dims: Vec<usize>,
        /// Cell edge length per axis.
        spacing: Vec<f64>,
        /// Total cell count.
        n_cells: usize,
    },
}

/// Spectrum details attached when probing in an observable's eigenbasis.
#[derive(Debug, Serialize)]
pub struct SpectrumBlock {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Whether two levels are close enough that the eigenbasis — and any
    /// value computed in it — is not unique.
    pub degenerate: bool,
}

/// Effective-volume details for grid inputs.
#[derive(Debug, Serialize)]
pub struct VolumeBlock {
    /// Midpoint Riemann sum of the clipped density.
    pub value: f64,
    /// Volume of the whole box.
    pub region_volume: f64,
    /// Volume of a single cell.
    pub cell_volume: f64,
    /// Total cell count.
    pub n_cells: usize,
    /// Minimal effective number of the induced counting vector; its product
    /// with `cell_volume` must reproduce `value`.
    pub discrete_n_star: f64,
    /// Relative defect of that identity, checked against
    /// [`crate::commands::BRIDGE_TOL`].
    pub bridge_gap_relative: f64,
}

/// Sampling summary: the exact uncertainty against its empirical estimate.
#[derive(Debug, Serialize)]
pub struct SamplingBlock {
    /// Number of simulated measurements.
    pub count: usize,
    /// RNG seed.
    pub seed: u64,
    /// Minimal effective number of the exact outcome weights.
    pub exact_n_star: f64,
    /// Minimal effective number of the observed outcome frequencies.
    pub empirical_n_star: f64,
    /// Absolute difference between the two.
    pub gap: f64,
}

/// A full report for the state and grid commands.
#[derive(Debug, Serialize)]
pub struct Report {
    /// What was analyzed.
    pub input: InputInfo,
    /// All counting quantifiers of the induced counting vector.
    pub quantifiers: QuantifierBlock,
    /// Present when an observable's eigenbasis was used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumBlock>,
    /// Present for grid inputs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub effective_volume: Option<VolumeBlock>,
    /// Present for sampling runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling: Option<SamplingBlock>,
    /// Notable conditions, e.g. `degenerate_spectrum` or
    /// `bridge_identity_violated`.
    pub flags: Vec<String>,
    /// Wall-clock milliseconds; the one field exempt from byte-for-byte
    /// reproducibility.
    pub timing_ms: u64,
}

/// A full report for the verification command.
#[derive(Debug, Serialize)]
pub struct VerifyReport {
    /// Name of the quantifier under test.
    pub quantifier: &'static str,
    /// Renyi order, when the quantifier takes one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Generator configuration the battery ran with.
    pub config: GeneratorConfig,
    /// One report per axiom, in battery order.
    pub axioms: Vec<AxiomReport>,
    /// The pass/fail pattern this quantifier is supposed to produce.
    pub expected: BTreeMap<&'static str, bool>,
    /// Whether the observed pattern equals the expected one.
    pub matches_expected: bool,
    /// Whether every check passed outright.
    pub all_passed: bool,
    /// Wall-clock milliseconds; excluded from reproducibility.
    pub timing_ms: u64,
}

/// Formats one float at 17 significant digits, the round-trip width.
pub fn float17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Pretty JSON whose floats all carry 17 significant digits.
struct Pretty17<'a> {
    inner: PrettyFormatter<'a>,
}

impl Formatter for Pretty17<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_array(writer)
    }

    fn end_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object(writer)
    }

    fn end_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object_value(writer)
    }
}

/// Serializes any report to newline-terminated pretty JSON with 17-digit
/// floats.
pub fn to_json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(
        &mut out,
        Pretty17 {
            inner: PrettyFormatter::new(),
        },
    );
    value
        .serialize(&mut ser)
        .map_err(|e| CliError::numeric(format!("serializing report: {e}")))?;
    out.push(b'\n');
    Ok(out)
}

/// Renders any report as flat `field,value` CSV rows; nested fields use
/// dotted paths and arrays use `[index]` suffixes. Key order is
/// alphabetical at each level, so the rendering is deterministic.
pub fn to_csv_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let tree = serde_json::to_value(value)
        .map_err(|e| CliError::numeric(format!("serializing report: {e}")))?;
    let mut rows = Vec::new();
    flatten("", &tree, &mut rows);
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["field", "value"])
        .and_then(|()| rows.iter().try_for_each(|(k, v)| writer.write_record([k, v])))
        .map_err(|e| CliError::numeric(format!("rendering csv: {e}")))?;
    writer
        .into_inner()
        .map_err(|e| CliError::numeric(format!("rendering csv: {e}")))
}

fn flatten(path: &str, value: &serde_json::Value, rows: &mut Vec<(String, String)>) {
    match value {
        serde_json::Value::Object(map) => {
            for (key, child) in map {
                let next = if path.is_empty() {
                    key.clone()
                } else {
                    format!("{path}.{key}")
                };
                flatten(&next, child, rows);
            }
        }
        serde_json::Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&format!("{path}[{i}]"), child, rows);
            }
        }
        leaf => rows.push((path.to_string(), render_leaf(leaf))),
    }
}

fn render_leaf(value: &serde_json::Value) -> String {
    match value {
        serde_json::Value::Null => String::new(),
        serde_json::Value::Bool(b) => b.to_string(),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.to_string()
            } else if let Some(u) = n.as_u64() {
                u.to_string()
            } else {
                float17(n.as_f64().unwrap_or(f64::NAN))
            }
        }
        serde_json::Value::String(s) => s.clone(),
        nested => nested.to_string(),
    }
}
