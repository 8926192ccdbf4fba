//! Report envelope: every CLI command emits one of these, rendered as JSON,
//! CSV, or an aligned table. The three renderings carry identical numeric
//! payloads (the CSV/table rows are a recursive flattening of the same
//! `results` tree), and the bytes are deterministic for fixed inputs and
//! seed. Non-finite floats serialize as JSON null; keep them out of results.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<OutputFormat> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "table" => Ok(OutputFormat::Table),
            _ => Err(Error::Domain(format!(
                "unknown output format `{s}` (expected json, csv, or table)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceFlag {
    pub name: String,
    pub converged: bool,
    pub estimate: f64,
}

/// Envelope around one command's results.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Input echo; BTreeMap keeps the byte output independent of insertion
    /// order.
    pub args: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub notes: Vec<String>,
    pub convergence: Vec<ConvergenceFlag>,
    pub results: Value,
}

impl Envelope {
    #[must_use]
    pub fn new(command: &str) -> Envelope {
        Envelope {
            schema: SCHEMA_VERSION,
            tool: "conespec".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            args: BTreeMap::new(),
            seed: None,
            notes: Vec::new(),
            convergence: Vec::new(),
            results: Value::Null,
        }
    }

    pub fn arg(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.args.insert(key.to_string(), value.to_string());
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    pub fn flag_convergence(&mut self, name: &str, converged: bool, estimate: f64) -> &mut Self {
        self.convergence.push(ConvergenceFlag {
            name: name.to_string(),
            converged,
            estimate,
        });
        self
    }

    pub fn set_results(&mut self, results: &impl Serialize) -> Result<()> {
        self.results = serde_json::to_value(results)
            .map_err(|e| Error::Internal(format!("report serialization failed: {e}")))?;
        Ok(())
    }

    /// Recursive flattening of the envelope into (path, value-text) rows:
    /// objects extend the path with `.key`, arrays with `[i]`.
    #[must_use]
    pub fn flattened(&self) -> Vec<(String, String)> {
        let whole = serde_json::to_value(self).expect("envelope serialization is infallible");
        let mut rows = Vec::new();
        flatten_value("", &whole, &mut rows);
        rows
    }

    #[must_use]
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self)
                    .expect("envelope serialization is infallible");
                s.push('\n');
                s
            }
            OutputFormat::Csv => {
                let mut out = String::from("key,value\n");
                for (k, v) in self.flattened() {
                    let _ = writeln!(out, "{},{}", csv_field(&k), csv_field(&v));
                }
                out
            }
            OutputFormat::Table => {
                let rows = self.flattened();
                let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                let mut out = String::new();
                for (k, v) in rows {
                    let _ = writeln!(out, "{k:<width$}  {v}");
                }
                out
            }
        }
    }
}

fn leaf_text(v: &Value) -> String {
    match v {
        Value::Null => "null".to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => {
            // Shortest round-trip text for floats; integers as-is.
            if let Some(i) = n.as_i64() {
                i.to_string()
            } else if let Some(u) = n.as_u64() {
                u.to_string()
            } else {
                n.as_f64().map_or_else(|| n.to_string(), |f| f.to_string())
            }
        }
        Value::String(s) => s.clone(),
        _ => unreachable!("containers are never leaves"),
    }
}

fn flatten_value(path: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let sub = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                flatten_value(&sub, child, rows);
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                flatten_value(&format!("{path}[{i}]"), child, rows);
            }
        }
        leaf => rows.push((path.to_string(), leaf_text(leaf))),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Demo {
        value: f64,
        flags: Vec<bool>,
        nested: Inner,
    }

    #[derive(Serialize)]
    struct Inner {
        tiny: f64,
        label: String,
    }

    fn demo_envelope() -> Envelope {
        let mut env = Envelope::new("demo");
        env.arg("cells", 100).arg("model", "round-sphere");
        env.note("a, quoted \"note\"");
        env.flag_convergence("mesh", true, 1e-9);
        env.set_results(&Demo {
            value: 0.1 + 0.2,
            flags: vec![true, false],
            nested: Inner {
                tiny: 1e-17,
                label: "x".into(),
            },
        })
        .unwrap();
        env
    }

    #[test]
    fn rendering_is_deterministic() {
        let a = demo_envelope().render(OutputFormat::Json);
        let b = demo_envelope().render(OutputFormat::Json);
        assert_eq!(a, b);
        // Arg insertion order does not leak into the bytes.
        let mut swapped = Envelope::new("demo");
        swapped.arg("model", "round-sphere").arg("cells", 100);
        let mut base = Envelope::new("demo");
        base.arg("cells", 100).arg("model", "round-sphere");
        assert_eq!(
            swapped.render(OutputFormat::Json),
            base.render(OutputFormat::Json)
        );
    }

    #[test]
    fn csv_and_json_carry_the_same_numbers() {
        let env = demo_envelope();
        let json: Value = serde_json::from_str(&env.render(OutputFormat::Json)).unwrap();
        let mut json_rows = Vec::new();
        flatten_value("", &json, &mut json_rows);

        let csv = env.render(OutputFormat::Csv);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("key,value"));
        let csv_rows: Vec<(String, String)> = lines
            .map(|l| {
                // The demo's keys are never quoted; values may be.
                let (k, v) = l.split_once(',').unwrap();
                let v = v.strip_prefix('"').map_or(v.to_string(), |inner| {
                    inner.strip_suffix('"').unwrap().replace("\"\"", "\"")
                });
                (k.to_string(), v)
            })
            .collect();
        assert_eq!(json_rows.len(), csv_rows.len());
        for ((jk, jv), (ck, cv)) in json_rows.iter().zip(&csv_rows) {
            assert_eq!(jk, ck);
            match (jv.parse::<f64>(), cv.parse::<f64>()) {
                (Ok(a), Ok(b)) => assert_eq!(a.to_bits(), b.to_bits(), "key {jk}"),
                _ => assert_eq!(jv, cv, "key {jk}"),
            }
        }
        // Exact float text survives.
        assert!(csv.contains("results.nested.tiny,0.00000000000000001"));
        assert!(csv.contains("results.value,0.30000000000000004"));
    }

    #[test]
    fn flatten_paths_are_exact() {
        let rows = demo_envelope().flattened();
        let get = |key: &str| {
            rows.iter()
                .find(|(k, _)| k == key)
                .unwrap_or_else(|| panic!("missing {key}"))
                .1
                .clone()
        };
        assert_eq!(get("schema"), "1");
        assert_eq!(get("command"), "demo");
        assert_eq!(get("args.cells"), "100");
        assert_eq!(get("results.flags[0]"), "true");
        assert_eq!(get("results.flags[1]"), "false");
        assert_eq!(get("results.nested.label"), "x");
        assert_eq!(get("convergence[0].converged"), "true");
    }

    #[test]
    fn non_finite_floats_become_null() {
        #[derive(Serialize)]
        struct Bad {
            oops: f64,
        }
        let mut env = Envelope::new("demo");
        env.set_results(&Bad { oops: f64::INFINITY }).unwrap();
        assert_eq!(env.results["oops"], Value::Null);
        assert!(env.render(OutputFormat::Csv).contains("results.oops,null"));
    }

    #[test]
    fn table_format_aligns_keys() {
        let table = demo_envelope().render(OutputFormat::Table);
        for line in table.lines() {
            assert!(line.contains("  "), "line `{line}` lacks the separator");
        }
        assert!(table.contains("results.value"));
    }

    #[test]
    fn format_parsing() {
        assert_eq!("json".parse::<OutputFormat>().unwrap(), OutputFormat::Json);
        assert_eq!("csv".parse::<OutputFormat>().unwrap(), OutputFormat::Csv);
        assert_eq!("table".parse::<OutputFormat>().unwrap(), OutputFormat::Table);
        assert!("yaml".parse::<OutputFormat>().is_err());
    }
}
