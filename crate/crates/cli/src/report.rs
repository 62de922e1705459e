use std::collections::BTreeMap;
use std::fmt::Write;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;
use twocat::fgmod::FgModule;
use twocat::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Result object plus named pass/fail checks.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub result: Value,
    pub checks: BTreeMap<String, bool>,
    pub passed: bool,
}

pub enum Output {
    Report(Report),
    /// A bare document, such as a generated instance file.
    Document(Value),
}

impl Report {
    pub fn new(command: &str, result: impl Serialize) -> Report {
        Report {
            command: command.to_string(),
            result: serde_json::to_value(result).expect("results serialize"),
            checks: BTreeMap::new(),
            passed: true,
        }
    }

    pub fn check(mut self, name: &str, ok: bool) -> Report {
        self.checks.insert(name.to_string(), ok);
        self.passed &= ok;
        self
    }
}

impl Output {
    pub fn passed(&self) -> bool {
        match self {
            Output::Report(r) => r.passed,
            Output::Document(_) => true,
        }
    }

    pub fn render(&self, format: Format) -> String {
        let v = match self {
            Output::Report(r) => serde_json::to_value(r).unwrap(),
            Output::Document(v) => v.clone(),
        };
        match format {
            Format::Json => serde_json::to_string_pretty(&v).unwrap(),
            Format::Text => {
                let mut s = String::new();
                text(&mut s, &v, 0);
                s.trim_end().to_string()
            }
        }
    }
}

/// Indented outline of a JSON value; matrices print as rows and modules by
/// their invariant factors.
fn text(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match inline(x) {
                    Some(line) => {
                        let _ = writeln!(out, "{pad}{k}: {line}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        text(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match inline(x) {
                    Some(line) => {
                        let _ = writeln!(out, "{pad}- {line}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        text(out, x, depth + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", inline(other).unwrap_or_default());
        }
    }
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", xs.iter().map(|x| inline(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        Value::Object(map) if map.contains_key("entries") => {
            let m: Matrix = serde_json::from_value(v.clone()).ok()?;
            let rows: Vec<String> = (0..m.rows())
                .map(|i| format!("[{}]", m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")))
                .collect();
            Some(format!("{}x{} {}", m.rows(), m.cols(), rows.join(" ")))
        }
        Value::Object(map) if map.contains_key("generators") && map.contains_key("relations") => {
            let m: FgModule = serde_json::from_value(v.clone()).ok()?;
            Some(m.describe())
        }
        _ => None,
    }
}
