//! Experiment records and their text/JSON/CSV renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub subcommand: String,
    pub params: Value,
    pub results: Value,
    pub version: String,
    pub timestamp: String,
}

impl ExperimentRecord {
    pub fn new(subcommand: &str, params: Value, results: Value) -> Self {
        Self {
            subcommand: subcommand.to_string(),
            params,
            results,
            version: qspecies::VERSION.to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
        }
    }

    /// The record with the timestamp removed; what reruns must reproduce.
    pub fn payload(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("record serializes");
        if let Value::Object(map) = &mut v {
            map.remove("timestamp");
        }
        v
    }
}

/// Rows for CSV output. Cells are already formatted.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    /// A two-column `key,value` table.
    pub fn key_value<K: Into<String>>(pairs: impl IntoIterator<Item = (K, String)>) -> Self {
        let mut t = Self::new(["key", "value"]);
        for (k, v) in pairs {
            t.push(vec![k.into(), v]);
        }
        t
    }

    pub fn to_csv(&self) -> Result<String, String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).map_err(|e| e.to_string())?;
        for row in &self.rows {
            w.write_record(row).map_err(|e| e.to_string())?;
        }
        let bytes = w.into_inner().map_err(|e| e.to_string())?;
        String::from_utf8(bytes).map_err(|e| e.to_string())
    }

    /// Fixed-width rendering for the terminal.
    pub fn to_text(&self) -> String {
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|c| {
                self.rows
                    .iter()
                    .map(|r| r[c].len())
                    .chain([self.headers[c].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        let line = |out: &mut String, cells: &[String]| {
            let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(&mut out, &self.headers);
        for r in &self.rows {
            line(&mut out, r);
        }
        out
    }
}

pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub fn fmt_c64(z: qspecies::C64) -> String {
    if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
        format!("{}-{}j", z.re, -z.im)
    } else {
        format!("{}+{}j", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_has_header_and_lf() {
        let mut t = Table::new(["M", "s2"]);
        t.push(vec!["1".into(), fmt_f64(0.5)]);
        assert_eq!(t.to_csv().unwrap(), "M,s2\n1,0.5\n");
    }

    #[test]
    fn payload_drops_timestamp_only() {
        let r = ExperimentRecord::new("x", json!({"a": 1}), json!([1.5]));
        let p = r.payload();
        assert!(p.get("timestamp").is_none());
        for k in ["subcommand", "params", "results", "version"] {
            assert!(p.get(k).is_some());
        }
    }

    #[test]
    fn complex_formatting_round_trips() {
        for z in [qspecies::C64::new(0.5, -0.25), qspecies::C64::new(-1.0, 2.0)] {
            assert_eq!(crate::amplitudes::parse_complex(&fmt_c64(z)).unwrap(), z);
        }
    }
}
