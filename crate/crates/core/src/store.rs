//! Append-only JSON-lines store for prime tables and audit summaries.
//!
//! Records are never rewritten. Storing a payload under a key that already
//! has a record compares the two serialized payloads byte for byte and
//! reports a divergence instead of appending.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::lefschetz::AuditSummary;
use crate::symmetry::PrimeOrderTable;
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

static WRITER: Mutex<()> = Mutex::new(());

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PayloadKind {
    PrimeTable,
    AuditSummary,
}

impl std::fmt::Display for PayloadKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PayloadKind::PrimeTable => "prime_table",
            PayloadKind::AuditSummary => "audit_summary",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StoreKey {
    pub d: u32,
    pub n: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoreRecord {
    pub schema_version: u32,
    pub kind: PayloadKind,
    pub key: StoreKey,
    pub payload: Value,
    pub created_at: String,
    pub tool_version: String,
}

impl StoreRecord {
    pub fn prime_table(table: &PrimeOrderTable) -> Result<Self> {
        Self::build(
            PayloadKind::PrimeTable,
            StoreKey {
                d: table.d,
                n: table.n,
            },
            serde_json::to_value(table)?,
        )
    }

    pub fn audit_summary(summary: &AuditSummary) -> Result<Self> {
        Self::build(
            PayloadKind::AuditSummary,
            StoreKey {
                d: summary.d,
                n: summary.n,
            },
            serde_json::to_value(summary)?,
        )
    }

    fn build(kind: PayloadKind, key: StoreKey, payload: Value) -> Result<Self> {
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            kind,
            key,
            payload,
            created_at: timestamp(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        })
    }

    pub fn payload_bytes(&self) -> String {
        serde_json::to_string(&self.payload).expect("JSON values always serialize")
    }

    pub fn as_prime_table(&self) -> Result<PrimeOrderTable> {
        if self.kind != PayloadKind::PrimeTable {
            return Err(Error::Invalid(format!("record holds a {}", self.kind)));
        }
        Ok(serde_json::from_value(self.payload.clone())?)
    }
}

/// RFC 3339 creation time. Honors `SOURCE_DATE_EPOCH` so that reruns can
/// produce byte-identical stores.
fn timestamp() -> String {
    let pinned = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .and_then(|secs| chrono::DateTime::from_timestamp(secs, 0));
    pinned
        .unwrap_or_else(chrono::Utc::now)
        .to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// Parses one store line. `line_no` is 1-based and only used in errors.
pub fn parse_line(path: &str, line_no: usize, line: &str) -> Result<StoreRecord> {
    let err = |msg: String| Error::Store {
        path: path.to_string(),
        line: line_no,
        msg,
    };
    let raw: Value = serde_json::from_str(line).map_err(|e| err(format!("corrupt record: {e}")))?;
    match raw.get("schema_version").and_then(Value::as_u64) {
        Some(v) if v == SCHEMA_VERSION as u64 => {}
        Some(v) => return Err(err(format!("unsupported schema version {v}"))),
        None => return Err(err("missing schema_version".into())),
    }
    serde_json::from_value(raw).map_err(|e| err(format!("corrupt record: {e}")))
}

#[derive(Debug)]
pub struct Store {
    path: PathBuf,
    records: Vec<StoreRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PutOutcome {
    Appended,
    /// An identical payload was already stored.
    Verified,
}

impl Store {
    /// Loads every record. A missing file is an empty store.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut records = Vec::new();
        if path.exists() {
            let shown = path.display().to_string();
            let reader = BufReader::new(File::open(&path)?);
            for (i, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                records.push(parse_line(&shown, i + 1, &line)?);
            }
        }
        Ok(Self { path, records })
    }

    pub fn records(&self) -> &[StoreRecord] {
        &self.records
    }

    /// Most recent record for a key.
    pub fn latest(&self, kind: PayloadKind, d: u32, n: u32) -> Option<&StoreRecord> {
        self.records
            .iter()
            .rev()
            .find(|r| r.kind == kind && r.key == StoreKey { d, n })
    }

    /// Appends `record`, or checks it against the stored record with the same key.
    pub fn put(&mut self, record: StoreRecord) -> Result<PutOutcome> {
        if let Some(existing) = self.latest(record.kind, record.key.d, record.key.n) {
            if existing.payload_bytes() == record.payload_bytes() {
                return Ok(PutOutcome::Verified);
            }
            return Err(Error::Divergence {
                kind: record.kind.to_string(),
                d: record.key.d,
                n: record.key.n,
            });
        }
        let line = serde_json::to_string(&record)?;
        {
            let _guard = WRITER.lock().unwrap_or_else(|e| e.into_inner());
            let mut file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(&self.path)?;
            writeln!(file, "{line}")?;
            file.flush()?;
        }
        self.records.push(record);
        Ok(PutOutcome::Appended)
    }
}

/// Opens the store at `path`, stores `record` and returns the record now on file.
pub fn store_read_write(path: impl AsRef<Path>, record: StoreRecord) -> Result<StoreRecord> {
    let mut store = Store::open(&path)?;
    let (kind, key) = (record.kind, record.key);
    store.put(record)?;
    Ok(store
        .latest(kind, key.d, key.n)
        .cloned()
        .expect("record was just stored or verified"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_other_schema_versions() {
        let line = r#"{"schema_version":2,"kind":"prime_table","key":{"d":3,"n":1},"payload":{},"created_at":"x","tool_version":"0"}"#;
        let e = parse_line("s.jsonl", 4, line).unwrap_err();
        assert!(e.to_string().contains("s.jsonl:4"), "{e}");
        assert!(e.to_string().contains("schema version 2"), "{e}");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_line("s", 1, "{not json").is_err());
        assert!(parse_line("s", 1, r#"{"schema_version":1}"#).is_err());
        assert!(parse_line("s", 1, "[]").is_err());
    }
}
