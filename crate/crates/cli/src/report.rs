//! Tabular reports rendered as TSV or JSON.

use std::io::Write;

use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

pub struct Report {
    pub command: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    /// trailing key/value lines
    pub summary: Vec<(String, Value)>,
    /// false when some requested computation did not finish
    pub complete: bool,
}

impl Report {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Self { command, columns: columns.to_vec(), rows: Vec::new(), summary: Vec::new(), complete: true }
    }

    pub fn row(&mut self, values: Vec<Value>) {
        debug_assert_eq!(values.len(), self.columns.len());
        self.rows.push(values);
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.summary.push((key.into(), value.into()));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => self.tsv(),
            Format::Json => self.json(),
        }
    }

    fn tsv(&self) -> String {
        let mut out = self.columns.join("\t");
        out.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(cell_text).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        for (k, v) in &self.summary {
            out.push_str(&format!("# {k}: {}\n", cell_text(v)));
        }
        out
    }

    fn json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let m: Map<String, Value> = self.columns.iter().map(|c| c.to_string()).zip(r.iter().cloned()).collect();
                Value::Object(m)
            })
            .collect();
        let summary: Map<String, Value> = self.summary.iter().cloned().collect();
        let doc = json!({
            "command": self.command,
            "complete": self.complete,
            "rows": rows,
            "summary": summary,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
        s.push('\n');
        s
    }
}

/// Floats print with six decimals so reports stay byte-stable.
pub fn cell_text(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_f64() => format!("{:.6}", n.as_f64().unwrap_or(f64::NAN)),
        Value::Array(a) => a.iter().map(cell_text).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

pub fn emit(text: &str, out: Option<&std::path::Path>) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut o = std::io::stdout().lock();
            o.write_all(text.as_bytes())?;
            o.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tsv_and_json() {
        let mut r = Report::new("t", &["a", "b"]);
        r.row(vec![json!("x"), json!(1.5)]);
        r.row(vec![Value::Null, json!([1, 2])]);
        r.note("residual", json!([1, 2]));
        assert_eq!(r.render(Format::Tsv), "a\tb\nx\t1.500000\n-\t1,2\n# residual: 1,2\n");
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["rows"][0]["b"], json!(1.5));
        assert_eq!(v["summary"]["residual"], json!([1, 2]));
    }
}
