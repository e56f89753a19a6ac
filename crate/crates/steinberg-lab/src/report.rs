//! Suite reports and flat table rendering.

use std::fmt;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

/// Where the expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Hard-coded table.
    Table,
    /// Closed formula evaluated independently.
    ClosedForm,
    /// Exhaustive search.
    BruteForce,
    /// Structural identity that must hold.
    Invariant,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).expect("unit enum");
        f.write_str(v.as_str().expect("string"))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub status: Status,
    pub value: String,
    pub expected: String,
    pub provenance: Provenance,
}

impl Check {
    /// Passes iff `value == expected` as strings; both are exact renderings.
    pub fn eq(
        id: impl Into<String>,
        description: impl Into<String>,
        value: impl ToString,
        expected: impl ToString,
        provenance: Provenance,
    ) -> Check {
        let (value, expected) = (value.to_string(), expected.to_string());
        let status = if value == expected { Status::Pass } else { Status::Fail };
        Check { id: id.into(), description: description.into(), status, value, expected, provenance }
    }

    /// Status decided by the caller's own exact comparison.
    pub fn with(
        id: impl Into<String>,
        description: impl Into<String>,
        ok: bool,
        value: impl ToString,
        expected: impl ToString,
        provenance: Provenance,
    ) -> Check {
        let status = if ok { Status::Pass } else { Status::Fail };
        Check {
            id: id.into(),
            description: description.into(),
            status,
            value: value.to_string(),
            expected: expected.to_string(),
            provenance,
        }
    }

    pub fn skip(
        id: impl Into<String>,
        description: impl Into<String>,
        reason: impl ToString,
        provenance: Provenance,
    ) -> Check {
        Check {
            id: id.into(),
            description: description.into(),
            status: Status::Skip,
            value: reason.to_string(),
            expected: String::new(),
            provenance,
        }
    }

    /// A check that could not be evaluated counts as a failure.
    pub fn error(
        id: impl Into<String>,
        description: impl Into<String>,
        err: impl ToString,
        provenance: Provenance,
    ) -> Check {
        Check {
            id: id.into(),
            description: description.into(),
            status: Status::Fail,
            value: format!("error: {}", err.to_string()),
            expected: String::new(),
            provenance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["id", "description", "status", "value", "expected", "provenance"]);
        for c in &self.checks {
            t.push(vec![
                c.id.clone(),
                c.description.clone(),
                c.status.to_string(),
                c.value.clone(),
                c.expected.clone(),
                c.provenance.to_string(),
            ]);
        }
        t
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

/// Rows of strings under fixed column names.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Table {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    pub fn to_markdown(&self) -> String {
        let esc = |s: &str| s.replace('|', "\\|");
        let mut out = format!("| {} |\n", self.columns.join(" | "));
        out += &format!("|{}\n", "---|".repeat(self.columns.len()));
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|c| esc(c)).collect();
            out += &format!("| {} |\n", cells.join(" | "));
        }
        out
    }

    /// Array of objects keyed by column, in column order.
    pub fn to_json_value(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let mut m = Map::new();
                    for (c, v) in self.columns.iter().zip(r) {
                        m.insert(c.clone(), Value::String(v.clone()));
                    }
                    Value::Object(m)
                })
                .collect(),
        )
    }
}
