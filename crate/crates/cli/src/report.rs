use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{Map, Value};

use crate::CliError;

/// Rows for CSV output. Only tabular results carry one.
#[derive(Debug)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv writer emits utf-8"))
    }
}

#[derive(Debug)]
pub struct Report {
    pub fields: Map<String, Value>,
    pub table: Option<Table>,
    /// A mathematical property failed; the fields hold the witness.
    pub violated: bool,
}

impl Report {
    pub fn new() -> Self {
        Report {
            fields: Map::new(),
            table: None,
            violated: false,
        }
    }

    pub fn set(&mut self, key: &str, v: impl serde::Serialize) -> &mut Self {
        let v = serde_json::to_value(v).expect("report values serialize");
        self.fields.insert(key.to_string(), v);
        self
    }

    pub fn violated(mut self, yes: bool) -> Self {
        self.violated = yes;
        self
    }

    pub fn with_table(mut self, t: Table) -> Self {
        self.table = Some(t);
        self
    }

    pub fn render(&self, command: &str, csv: bool, timestamp: bool) -> Result<String, CliError> {
        if csv {
            return match &self.table {
                Some(t) => t.to_csv(),
                None => Err(CliError::Usage(format!(
                    "`{command}` has no tabular output; use --format json"
                ))),
            };
        }
        let mut out = Map::new();
        out.insert("command".into(), command.into());
        let status = if self.violated { "violated" } else { "ok" };
        out.insert("status".into(), status.into());
        for (k, v) in &self.fields {
            out.insert(k.clone(), v.clone());
        }
        if timestamp {
            let secs = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            out.insert("timestamp".into(), secs.into());
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(out))?;
        s.push('\n');
        Ok(s)
    }
}

pub fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}
