use std::fs;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::failure::{CliResult, IoContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Numeric dataset with named columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

/// Scientific notation with 12 significant digits.
pub fn format_number(x: f64) -> String {
    format!("{x:.11e}")
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| format_number(x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"config": …, "data": [{column: value, …}, …]}`.
    pub fn to_json(&self, config: Value) -> String {
        let data: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().zip(row).map(|(c, &x)| (c.to_string(), Value::from(x))).collect();
                Value::Object(obj)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("config".into(), config);
        doc.insert("data".into(), Value::Array(data));
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format, config: Value) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(config),
        }
    }
}

/// Writes to `path`, or to standard output when there is none.
pub fn emit(path: Option<&Path>, contents: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, contents).io_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes()).io_context(|| "cannot write to standard output".into())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_is_fixed_width_scientific() {
        let mut t = Table::new(vec!["a", "b"]);
        t.rows.push(vec![1.0, -0.000123456789012345]);
        t.rows.push(vec![0.0, 3.7e-25]);
        assert_eq!(t.to_csv(), "a,b\n1.00000000000e0,-1.23456789012e-4\n0.00000000000e0,3.70000000000e-25\n");
    }

    #[test]
    fn json_has_config_and_rows() {
        let mut t = Table::new(vec!["x", "y"]);
        t.rows.push(vec![1.5, 2.0]);
        let v: Value = serde_json::from_str(&t.to_json(serde_json::json!({"k": 1}))).unwrap();
        assert_eq!(v["config"]["k"], 1);
        assert_eq!(v["data"][0]["x"], 1.5);
        assert_eq!(v["data"][0]["y"], 2.0);
    }
}
