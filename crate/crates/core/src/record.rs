//! Result records and their newline-delimited JSON files.
//!
//! A file starts with the header `{"schema":"gandy-hyland/result-record","version":1}`
//! followed by one [`ResultRecord`] per line.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const SCHEMA: &str = "gandy-hyland/result-record";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub schema: String,
    pub version: u32,
}

impl Default for Header {
    fn default() -> Self {
        Header {
            schema: SCHEMA.into(),
            version: SCHEMA_VERSION,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordError {
    /// Stable name, e.g. `FuelExhausted`.
    pub kind: String,
    pub message: String,
}

impl From<&Error> for RecordError {
    fn from(e: &Error) -> Self {
        RecordError {
            kind: e.kind().into(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub operation: String,
    /// Inputs rendered as text, by argument name.
    pub inputs: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<RecordError>,
    /// Number of calls to the functional under study.
    pub probes: u64,
    pub wall_micros: u64,
}

impl ResultRecord {
    pub fn new(operation: impl Into<String>) -> Self {
        ResultRecord {
            operation: operation.into(),
            inputs: BTreeMap::new(),
            output: None,
            error: None,
            probes: 0,
            wall_micros: 0,
        }
    }

    pub fn input(mut self, name: &str, value: impl ToString) -> Self {
        self.inputs.insert(name.into(), value.to_string());
        self
    }

    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }
}

pub fn emit_json(records: &[ResultRecord], path: &Path) -> Result<()> {
    let mut out = fs::File::create(path)?;
    writeln!(out, "{}", serde_json::to_string(&Header::default())?)?;
    for record in records {
        writeln!(out, "{}", serde_json::to_string(record)?)?;
    }
    Ok(())
}

pub fn read_json(path: &Path) -> Result<Vec<ResultRecord>> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header: Header = serde_json::from_str(lines.next().unwrap_or_default())?;
    if header != Header::default() {
        return Err(Error::Json(format!(
            "unsupported header {}/{}",
            header.schema, header.version
        )));
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| Ok(serde_json::from_str(l)?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> ResultRecord {
        let mut r = ResultRecord::new("eval-gh")
            .input("expr", "f(0)+f(1)")
            .input("seq", "⟨⟩");
        r.output = Some(json!({"value": 1}));
        r.probes = 4;
        r.wall_micros = 17;
        r
    }

    #[test]
    fn empty_list_is_header_only() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.jsonl");
        emit_json(&[], &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(
            text,
            "{\"schema\":\"gandy-hyland/result-record\",\"version\":1}\n"
        );
        assert!(read_json(&path).unwrap().is_empty());
    }

    #[test]
    fn records_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.jsonl");
        let mut failed = ResultRecord::new("mu").input("fixture", "ones");
        failed.error = Some((&Error::FuelExhausted { budget: 10 }).into());
        emit_json(&[sample()], &path).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 2);
        assert_eq!(read_json(&path).unwrap(), vec![sample()]);
        emit_json(&[sample(), failed.clone()], &path).unwrap();
        assert_eq!(read_json(&path).unwrap(), vec![sample(), failed]);
    }

    #[test]
    fn foreign_header_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.jsonl");
        fs::write(&path, "{\"schema\":\"other\",\"version\":1}\n").unwrap();
        assert!(matches!(read_json(&path), Err(Error::Json(_))));
    }
}
