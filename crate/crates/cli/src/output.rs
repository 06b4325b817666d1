//! Record types, JSON/CSV emission and machine-readable error records.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use twist_core::{ComplexValue, NumericsConfig};

use crate::Format;

/// A complex number as `{"re": …, "im": …}`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Cplx {
    pub re: f64,
    pub im: f64,
}

impl From<ComplexValue> for Cplx {
    fn from(z: ComplexValue) -> Self {
        Cplx { re: z.re, im: z.im }
    }
}

/// Provenance attached to every record: arithmetic mode and the tolerances
/// the value was computed under.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub precision: String,
    pub tolerances: BTreeMap<&'static str, f64>,
    pub paper_refs: Vec<String>,
}

impl Meta {
    pub fn from_config(cfg: &NumericsConfig) -> Self {
        let tolerances = BTreeMap::from([
            ("newton_tol", cfg.newton_tol),
            ("quad_abs_tol", cfg.quad_abs_tol),
            ("quad_rel_tol", cfg.quad_rel_tol),
        ]);
        Meta { precision: cfg.precision_mode.as_str().to_string(), tolerances, paper_refs: Vec::new() }
    }

    pub fn with_tolerance(mut self, name: &'static str, value: f64) -> Self {
        self.tolerances.insert(name, value);
        self
    }
}

/// One computed value: `{"p", "N", "value", "data", "meta"}`.
#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub p: i64,
    #[serde(rename = "N")]
    pub n: Option<u32>,
    pub value: Cplx,
    /// Command-specific companion quantities.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<&'static str, Value>,
    pub meta: Meta,
}

/// A flat table for the CSV projection.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        Table { headers: headers.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// What a command produces: the rendered JSON document and its CSV projection.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: String,
    pub table: Table,
}

impl Report {
    /// Renders `doc` as pretty JSON, keeping the field order of the type.
    pub fn new<T: Serialize + ?Sized>(doc: &T, table: Table) -> Result<Self, CliError> {
        let json = serde_json::to_string_pretty(doc).map_err(|e| CliError::Io(e.to_string()))?;
        Ok(Report { json, table })
    }
}

/// Shortest round-trip form (plain decimal for moderate magnitudes, exponent
/// form otherwise), so repeated runs are byte-identical.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Command-line failure, serialized as `{"error": {"kind", "message"}}`.
#[derive(Debug)]
pub enum CliError {
    Engine(twist_core::Error),
    Usage(String),
    Io(String),
}

impl From<twist_core::Error> for CliError {
    fn from(e: twist_core::Error) -> Self {
        CliError::Engine(e)
    }
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Engine(e) => e.kind(),
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Engine(e) => e.to_string(),
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
        }
    }
}

/// Writes the error record to standard error.
pub fn emit_error(e: &CliError) {
    let doc = json!({ "error": { "kind": e.kind(), "message": e.message() } });
    eprintln!("{doc}");
}

fn render(report: &Report, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => Ok(format!("{}\n", report.json).into_bytes()),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&report.table.headers).map_err(|e| CliError::Io(e.to_string()))?;
            for row in &report.table.rows {
                w.write_record(row).map_err(|e| CliError::Io(e.to_string()))?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

/// Writes the report to `path`, or to standard output.
pub fn emit(report: &Report, format: Format, path: Option<&Path>) -> Result<(), CliError> {
    let bytes = render(report, format)?;
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(&bytes).map_err(|e| CliError::Io(e.to_string())),
    }
}
