//! Report assembly and deterministic serialization: CSV carries the
//! result table only, JSON carries the whole report. Floats render via
//! the shortest round-trip representation, files are written atomically
//! through a sibling temp file.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::CliError;

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Str(String),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Num(v) => write!(f, "{v}"),
            Cell::Str(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub scenario: Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: BTreeMap<String, Value>,
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl RunReport {
    pub fn new(
        scenario: Value,
        columns: Vec<&str>,
        rows: Vec<Vec<Cell>>,
        summary: BTreeMap<String, Value>,
    ) -> Self {
        Self {
            scenario,
            columns: columns.into_iter().map(String::from).collect(),
            rows,
            summary,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            wall_time_s: None,
        }
    }
}

pub fn to_csv(report: &RunReport) -> Result<String, CliError> {
    let io_err = |e: csv::Error| CliError::Io(format!("cannot assemble CSV: {e}"));
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(&report.columns).map_err(io_err)?;
    for row in &report.rows {
        writer
            .write_record(row.iter().map(|cell| cell.to_string()))
            .map_err(io_err)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Io(format!("cannot assemble CSV: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(format!("CSV is not UTF-8: {e}")))
}

pub fn to_json_pretty(report: &RunReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}

pub fn to_json_compact(report: &RunReport) -> String {
    serde_json::to_string(report).expect("report serializes")
}

pub fn write_atomic(path: &Path, content: &str) -> Result<(), CliError> {
    let mut tmp = path.as_os_str().to_os_string();
    tmp.push(".tmp");
    let tmp = Path::new(&tmp);
    fs::write(tmp, content)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", tmp.display())))?;
    fs::rename(tmp, path)
        .map_err(|e| CliError::Io(format!("cannot move {} into place: {e}", tmp.display())))
}
