//! Report emission as JSON or CSV, to stdout or a file.

use std::fs;
use std::io::Write;

use serde::Serialize;

use crate::{Cli, Format};

#[derive(Debug)]
pub enum Failure {
    /// Unreadable or invalid input: exit code 2.
    Input(String),
    /// A checked invariant failed: exit code 3.
    Violation(String),
}

impl From<lelong_core::Error> for Failure {
    fn from(e: lelong_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

/// A finished command: the JSON document, its flattened CSV rows, and an
/// optional invariant violation to report after emission.
pub struct Report {
    pub name: &'static str,
    pub json: serde_json::Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub violation: Option<String>,
}

impl Report {
    pub fn new<T: Serialize>(name: &'static str, body: &T) -> Result<Self, Failure> {
        let json = serde_json::to_value(body).map_err(|e| Failure::Input(e.to_string()))?;
        Ok(Report { name, json, header: Vec::new(), rows: Vec::new(), violation: None })
    }

    pub fn table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.header = header;
        self.rows = rows;
        self
    }

    pub fn check(mut self, ok: bool, what: &str) -> Self {
        if !ok && self.violation.is_none() {
            self.violation = Some(what.to_string());
        }
        self
    }
}

fn render(format: Format, report: &Report) -> Result<Vec<u8>, Failure> {
    match format {
        Format::Json => {
            let mut text = serde_json::to_vec_pretty(&report.json).map_err(|e| Failure::Input(e.to_string()))?;
            text.push(b'\n');
            Ok(text)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Failure::Input(e.to_string());
            w.write_record(&report.header).map_err(io)?;
            for row in &report.rows {
                w.write_record(row).map_err(io)?;
            }
            w.into_inner().map_err(|e| Failure::Input(e.to_string()))
        }
    }
}

pub fn emit(cli: &Cli, report: &Report) -> Result<(), Failure> {
    let bytes = render(cli.format, report)?;
    match &cli.out {
        Some(dir) => {
            let ext = match cli.format {
                Format::Json => "json",
                Format::Csv => "csv",
            };
            fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
            let path = dir.join(format!("{}.{ext}", report.name));
            fs::write(&path, bytes).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        }
        None => std::io::stdout().write_all(&bytes).map_err(|e| Failure::Input(e.to_string())),
    }
}
