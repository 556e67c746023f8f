//! The output envelope every command emits, in JSON or CSV.
//!
//! Both formats carry the same payload: a fixed-schema table of rows.  JSON
//! wraps it in an envelope with the echoed parameters and a small summary
//! derived from the rows; CSV renders the rows alone, with the schema as the
//! header line.  Exact values travel as strings (decimal integers or
//! `"p/q"`), never as floats; the only floating-point fields are Monte Carlo
//! estimates, z-scores, and timings.
//!
//! Rendering is deterministic: key order is fixed at construction (the JSON
//! map preserves insertion order), floats print in shortest round-trip form,
//! and the wall-clock `timing_ms` field — the one legitimately
//! nondeterministic value — is dropped when an envelope is written to a
//! file, so file outputs are byte-identical across runs and thread counts.

use serde_json::{Map, Value};

use crate::exact::{format_rational, Int, Rat};

/// Wire format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Structured output of one command run.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputEnvelope {
    command: String,
    parameters: Map<String, Value>,
    summary: Map<String, Value>,
    schema: Vec<String>,
    rows: Vec<Vec<Value>>,
    timing_ms: Option<u64>,
}

/// String value (used for all exact numbers).
pub fn v_str(s: impl Into<String>) -> Value {
    Value::String(s.into())
}

/// Exact integer as a decimal string.
pub fn v_int(i: &Int) -> Value {
    v_str(i.to_string())
}

/// Exact rational in `p/q` wire form.
pub fn v_rat(r: &Rat) -> Value {
    v_str(format_rational(r))
}

/// Machine integer as a JSON number.
pub fn v_u64(v: u64) -> Value {
    Value::from(v)
}

/// Float as a JSON number (shortest round-trip rendering).
pub fn v_f64(v: f64) -> Value {
    Value::from(v)
}

pub fn v_bool(v: bool) -> Value {
    Value::Bool(v)
}

/// Absent value: `null` in JSON, an empty cell in CSV.
pub fn v_null() -> Value {
    Value::Null
}

impl OutputEnvelope {
    /// Start an envelope for `command` whose rows follow `schema`.
    pub fn new(command: &str, schema: &[&str]) -> Self {
        OutputEnvelope {
            command: command.to_string(),
            parameters: Map::new(),
            summary: Map::new(),
            schema: schema.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            timing_ms: None,
        }
    }

    /// Echo one input parameter (insertion order is preserved in output).
    pub fn set_param(&mut self, key: &str, value: Value) {
        self.parameters.insert(key.to_string(), value);
    }

    /// Record one derived summary value.
    pub fn set_summary(&mut self, key: &str, value: Value) {
        self.summary.insert(key.to_string(), value);
    }

    /// Append a row; the cells must match the schema positionally.
    pub fn push_row(&mut self, cells: Vec<Value>) {
        assert_eq!(
            cells.len(),
            self.schema.len(),
            "row width must match the schema"
        );
        self.rows.push(cells);
    }

    /// Record the wall-clock duration of the run.
    pub fn set_timing_ms(&mut self, ms: u64) {
        self.timing_ms = Some(ms);
    }

    pub fn command(&self) -> &str {
        &self.command
    }

    pub fn schema(&self) -> &[String] {
        &self.schema
    }

    pub fn rows(&self) -> &[Vec<Value>] {
        &self.rows
    }

    /// Value of a summary field, if set.
    pub fn summary_value(&self, key: &str) -> Option<&Value> {
        self.summary.get(key)
    }

    /// A copy with the nondeterministic timing field removed, for file
    /// output that must be byte-identical across runs.
    pub fn without_timing(&self) -> Self {
        let mut copy = self.clone();
        copy.timing_ms = None;
        copy
    }

    /// The full JSON document, pretty-printed, with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut results = Map::new();
        for (k, v) in &self.summary {
            results.insert(k.clone(), v.clone());
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|cells| {
                let mut obj = Map::new();
                for (key, cell) in self.schema.iter().zip(cells) {
                    obj.insert(key.clone(), cell.clone());
                }
                Value::Object(obj)
            })
            .collect();
        results.insert("rows".to_string(), Value::Array(rows));

        let mut doc = Map::new();
        doc.insert("schema_version".to_string(), v_str("1"));
        doc.insert("command".to_string(), v_str(&self.command));
        doc.insert(
            "parameters".to_string(),
            Value::Object(self.parameters.clone()),
        );
        doc.insert("results".to_string(), Value::Object(results));
        if let Some(ms) = self.timing_ms {
            doc.insert("timing_ms".to_string(), v_u64(ms));
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(doc))
            .expect("maps of plain values always serialize");
        text.push('\n');
        text
    }

    /// The rows as CSV: header line from the schema, then one line per row.
    /// Quoting follows the value's type, not its spelling: text — exact
    /// values included, however numeric they look — is always quoted,
    /// numbers and booleans stay bare, and `null` becomes an empty cell.
    /// (Generic CSV writers quote by content and would strip the quotes
    /// from `"65"`, losing the text-vs-number distinction, so this writer
    /// is explicit.)
    pub fn to_csv(&self) -> String {
        let mut text = String::new();
        let header: Vec<String> = self.schema.iter().map(|name| quote_csv(name)).collect();
        text.push_str(&header.join(","));
        text.push('\n');
        for cells in &self.rows {
            debug_assert_eq!(cells.len(), self.schema.len());
            let record: Vec<String> = cells.iter().map(csv_cell).collect();
            text.push_str(&record.join(","));
            text.push('\n');
        }
        text
    }

    /// Render in the requested format.
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
        }
    }
}

/// Quote one field, doubling any embedded quotes (RFC 4180).
fn quote_csv(text: &str) -> String {
    format!("\"{}\"", text.replace('"', "\"\""))
}

/// One CSV cell for a JSON value.  Text — exact values included — is
/// quoted; numbers and booleans stay bare; `null` is an empty cell.
fn csv_cell(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::String(s) => quote_csv(s),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        other => panic!("unsupported cell value {other:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn sample() -> OutputEnvelope {
        let mut env = OutputEnvelope::new("stirling", &["method", "n", "d", "value"]);
        env.set_param("n", v_u64(6));
        env.set_param("d", v_u64(4));
        env.set_summary("agreement", v_bool(true));
        env.push_row(vec![v_str("euler"), v_u64(6), v_u64(4), v_int(&int(65))]);
        env.push_row(vec![
            v_str("record"),
            v_u64(6),
            v_u64(4),
            v_rat(&rat(65, 1)),
        ]);
        env
    }

    #[test]
    fn json_has_envelope_fields_in_stable_order() {
        let mut env = sample();
        env.set_timing_ms(12);
        let text = env.to_json();
        let idx = |needle: &str| {
            text.find(needle)
                .unwrap_or_else(|| panic!("missing {needle}"))
        };
        assert!(idx("schema_version") < idx("\"command\""));
        assert!(idx("\"command\"") < idx("parameters"));
        assert!(idx("parameters") < idx("results"));
        assert!(idx("results") < idx("timing_ms"));
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn json_round_trips_byte_identically() {
        let env = sample();
        let first = env.to_json();
        let reparsed: Value = serde_json::from_str(&first).unwrap();
        let mut second = serde_json::to_string_pretty(&reparsed).unwrap();
        second.push('\n');
        assert_eq!(first, second);
    }

    #[test]
    fn exact_values_are_strings_in_json() {
        let text = sample().to_json();
        assert!(text.contains("\"value\": \"65\""), "{text}");
    }

    #[test]
    fn csv_quotes_text_but_not_numbers() {
        // Quoting follows the value's type: the exact value "65" stays
        // quoted even though it looks numeric, while the plain numbers 6
        // and 4 stay bare.
        let text = sample().to_csv();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "\"method\",\"n\",\"d\",\"value\"");
        assert_eq!(lines.next().unwrap(), "\"euler\",6,4,\"65\"");
    }

    #[test]
    fn csv_escapes_embedded_quotes() {
        let mut env = OutputEnvelope::new("t", &["detail"]);
        env.push_row(vec![v_str("expected \"65\", got 64")]);
        assert_eq!(
            env.to_csv().lines().nth(1).unwrap(),
            "\"expected \"\"65\"\", got 64\""
        );
    }

    #[test]
    fn csv_and_json_carry_the_same_rows() {
        let env = sample();
        let json: Value = serde_json::from_str(&env.to_json()).unwrap();
        let json_rows = json["results"]["rows"].as_array().unwrap();

        let csv_text = env.to_csv();
        let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
        let headers: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
        let csv_rows: Vec<Vec<String>> = reader
            .records()
            .map(|r| r.unwrap().iter().map(String::from).collect())
            .collect();

        assert_eq!(json_rows.len(), csv_rows.len());
        for (jrow, crow) in json_rows.iter().zip(&csv_rows) {
            for (key, cell) in headers.iter().zip(crow) {
                let jval = &jrow[key];
                let as_string = match jval {
                    Value::Null => String::new(),
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                assert_eq!(&as_string, cell, "column {key}");
            }
        }
    }

    #[test]
    fn nulls_become_empty_cells() {
        let mut env = OutputEnvelope::new("t", &["a", "b"]);
        env.push_row(vec![v_null(), v_f64(0.5)]);
        let csv_text = env.to_csv();
        assert_eq!(csv_text.lines().nth(1).unwrap(), ",0.5");
        let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
        let record = reader.records().next().unwrap().unwrap();
        assert_eq!(&record[0], "");
    }

    #[test]
    fn timing_is_stripped_for_file_output() {
        let mut env = sample();
        env.set_timing_ms(99);
        assert!(env.to_json().contains("timing_ms"));
        assert!(!env.without_timing().to_json().contains("timing_ms"));
    }

    #[test]
    #[should_panic(expected = "row width")]
    fn mismatched_row_width_is_a_bug() {
        let mut env = OutputEnvelope::new("t", &["a", "b"]);
        env.push_row(vec![v_u64(1)]);
    }
}
