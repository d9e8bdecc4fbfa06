use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

/// Envelope for every machine-readable result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema_version: String,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: Value,
}

impl OutputDocument {
    pub fn new(command: &str, inputs: BTreeMap<String, Value>, results: Value) -> Self {
        Self { schema_version: SCHEMA_VERSION.to_string(), command: command.to_string(), inputs, results }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

/// Flat CSV projection: a header and rows of stringified cells.
pub struct CsvTable {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self { header, rows: Vec::new() }
    }

    pub fn push<I: IntoIterator<Item = String>>(&mut self, row: I) {
        self.rows.push(row.into_iter().collect());
    }

    pub fn render(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_round_trip() {
        let mut inputs = BTreeMap::new();
        inputs.insert("n".to_string(), json!(42));
        let doc = OutputDocument::new("count", inputs, json!({"total": 17, "types": [1, 2]}));
        let back: OutputDocument = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.schema_version, "1");
    }

    #[test]
    fn csv_has_header() {
        let mut t = CsvTable::new(vec!["a", "b"]);
        t.push(["1".to_string(), "x,y".to_string()]);
        assert_eq!(t.render().unwrap(), "a,b\n1,\"x,y\"\n");
    }
}
