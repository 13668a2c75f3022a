use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::ExperimentConfig;
use crate::error::{reject, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ColumnKind {
    Real,
    Int,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Column {
    pub name: String,
    pub kind: ColumnKind,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Real(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn kind(&self) -> ColumnKind {
        match self {
            Cell::Real(_) => ColumnKind::Real,
            Cell::Int(_) => ColumnKind::Int,
            Cell::Text(_) => ColumnKind::Text,
        }
    }

    /// Shortest round-trip text; reals always in exponent form.
    fn render(&self) -> String {
        match self {
            Cell::Real(x) if x.is_nan() => "NaN".into(),
            Cell::Real(x) => format!("{x:e}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub toolkit: String,
    pub version: String,
    pub config_sha256: String,
    pub generated_unix: u64,
}

impl Provenance {
    pub fn for_config(config: &ExperimentConfig) -> Self {
        let digest = Sha256::digest(config.canonical_json().as_bytes());
        Self {
            toolkit: "holonomy-lab".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config_sha256: hex::encode(digest),
            generated_unix: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        }
    }

    pub fn header_line(&self) -> String {
        format!(
            "# {} {} config_sha256={} generated_unix={}",
            self.toolkit, self.version, self.config_sha256, self.generated_unix
        )
    }
}

/// Typed, self-describing result rows.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultTable {
    /// File stem used when written.
    pub name: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
    pub provenance: Provenance,
}

impl ResultTable {
    pub fn new(name: impl Into<String>, columns: &[(&str, ColumnKind)], provenance: Provenance) -> Self {
        Self {
            name: name.into(),
            columns: columns.iter().map(|&(n, kind)| Column { name: n.to_string(), kind }).collect(),
            rows: Vec::new(),
            provenance,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.columns.len() {
            return reject(format!(
                "{}: row has {} cells, table has {} columns",
                self.name,
                row.len(),
                self.columns.len()
            ));
        }
        for (cell, col) in row.iter().zip(&self.columns) {
            if cell.kind() != col.kind {
                return reject(format!("{}: column '{}' expects {:?}", self.name, col.name, col.kind));
            }
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    pub fn real(&self, row: usize, name: &str) -> Option<f64> {
        match self.rows.get(row)?.get(self.column(name)?)? {
            Cell::Real(x) => Some(*x),
            _ => None,
        }
    }

    pub fn int(&self, row: usize, name: &str) -> Option<i64> {
        match self.rows.get(row)?.get(self.column(name)?)? {
            Cell::Int(x) => Some(*x),
            _ => None,
        }
    }

    pub fn text(&self, row: usize, name: &str) -> Option<&str> {
        match self.rows.get(row)?.get(self.column(name)?)? {
            Cell::Text(s) => Some(s),
            _ => None,
        }
    }

    /// Indices of rows whose `status` column is not "ok".
    pub fn failed_rows(&self) -> Vec<usize> {
        match self.column("status") {
            Some(c) => {
                (0..self.rows.len()).filter(|&r| !matches!(&self.rows[r][c], Cell::Text(s) if s == "ok")).collect()
            }
            None => Vec::new(),
        }
    }

    /// Header and rows as CSV, without the provenance line.
    pub fn csv_body(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.columns.iter().map(|c| c.name.as_str()))?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut text = self.provenance.header_line();
        text.push('\n');
        text.push_str(&self.csv_body()?);
        fs::write(path, text)?;
        Ok(())
    }
}

/// Strip `#` comment lines from a written CSV file.
pub fn csv_body_of(text: &str) -> String {
    text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect()
}
