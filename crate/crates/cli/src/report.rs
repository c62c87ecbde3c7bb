//! CSV tables and the JSON summary written at the end of a run.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliError;

/// 17 significant digits, enough to round-trip an `f64`.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone)]
pub struct Table {
    pub name: String,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: impl Into<String>, header: &[&'static str]) -> Self {
        Table {
            name: name.into(),
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn push_numbers(&mut self, row: &[f64]) {
        self.push(row.iter().map(|&v| num(v)).collect());
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    fn write(&self, dir: &Path) -> Result<(), CliError> {
        let mut w = csv::Writer::from_path(dir.join(format!("{}.csv", self.name)))?;
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// A measured quantity against its tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `measured ≤ tolerance`.
    pub fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            measured,
            tolerance,
            passed: measured <= tolerance,
        }
    }

    /// Passes when `measured ≥ bound`.
    pub fn at_least(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Check {
            name: name.into(),
            measured,
            tolerance: bound,
            passed: measured >= bound,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub tables: Vec<Table>,
    pub checks: Vec<Check>,
    pub extra: Map<String, Value>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            tables: Vec::new(),
            checks: Vec::new(),
            extra: Map::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn note(&mut self, key: &str, value: impl Into<Value>) {
        self.extra.insert(key.to_owned(), value.into());
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        fs::create_dir_all(dir)?;
        for t in &self.tables {
            t.write(dir)?;
        }
        let mut summary = Map::new();
        summary.insert("command".into(), self.command.clone().into());
        summary.insert("passed".into(), self.passed().into());
        summary.insert("checks".into(), serde_json::to_value(&self.checks)?);
        summary.insert(
            "tables".into(),
            self.tables.iter().map(|t| Value::from(format!("{}.csv", t.name))).collect(),
        );
        summary.extend(self.extra.clone());
        fs::write(dir.join("summary.json"), serde_json::to_string_pretty(&summary)? + "\n")?;
        Ok(())
    }
}
