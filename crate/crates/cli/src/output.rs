use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Map, Value};

/// Flat rows for CSV output.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        Table {
            header: header.iter().map(|h| h.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<I: IntoIterator<Item = String>>(&mut self, row: I) {
        self.rows.push(row.into_iter().collect());
    }
}

pub struct Sink {
    pub csv: bool,
    pub timestamp: bool,
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

impl Sink {
    pub fn render(&self, command: &str, result: Value, table: &Table) -> io::Result<Vec<u8>> {
        if self.csv {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .quote_style(csv::QuoteStyle::Necessary)
                .from_writer(Vec::new());
            w.write_record(&table.header)?;
            for r in &table.rows {
                w.write_record(r)?;
            }
            return w.into_inner().map_err(|e| io::Error::other(e.to_string()));
        }
        let mut result = result;
        let mut envelope = Map::new();
        envelope.insert("tool".into(), json!("rtl"));
        envelope.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        envelope.insert("command".into(), json!(command));
        if self.timestamp {
            let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
            envelope.insert("timestamp".into(), json!(secs));
        } else {
            strip_timing(&mut result);
        }
        envelope.insert("result".into(), result);
        let mut out = serde_json::to_vec_pretty(&Value::Object(envelope))?;
        out.push(b'\n');
        Ok(out)
    }

    pub fn write(&self, stdout: &mut Vec<u8>, out: Option<&Path>, command: &str, result: Value, table: &Table) -> io::Result<()> {
        let bytes = self.render(command, result, table)?;
        match out {
            Some(p) => fs::write(p, bytes),
            None => stdout.write_all(&bytes),
        }
    }
}
