//! Output records: one row per computed quantity, identical content in CSV
//! and JSON. Exact values are serialized as `p/q` strings, never floated.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub quantity: String,
    pub parameters: BTreeMap<String, String>,
    pub value: String,
    pub provenance: String,
}

impl OutputRecord {
    pub fn new(quantity: impl Into<String>, value: impl Into<String>, provenance: impl Into<String>) -> Self {
        OutputRecord {
            quantity: quantity.into(),
            parameters: BTreeMap::new(),
            value: value.into(),
            provenance: provenance.into(),
        }
    }

    pub fn with(mut self, key: &str, val: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), val.to_string());
        self
    }

    /// Record a tagged library result under the given quantity name.
    pub fn from_result(quantity: impl Into<String>, result: &polymoment::MomentResult) -> Self {
        OutputRecord::new(quantity, result.value_string(), result.provenance_string())
    }
}

fn parameters_to_string(p: &BTreeMap<String, String>) -> String {
    p.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn parameters_from_string(s: &str) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for kv in s.split(';').filter(|p| !p.is_empty()) {
        if let Some((k, v)) = kv.split_once('=') {
            out.insert(k.to_string(), v.to_string());
        }
    }
    out
}

pub fn to_csv(records: &[OutputRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["quantity", "parameters", "value", "provenance"])
        .expect("csv header");
    for r in records {
        w.write_record([
            r.quantity.as_str(),
            &parameters_to_string(&r.parameters),
            r.value.as_str(),
            r.provenance.as_str(),
        ])
        .expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
}

pub fn from_csv(text: &str) -> Result<Vec<OutputRecord>, csv::Error> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row?;
        out.push(OutputRecord {
            quantity: row.get(0).unwrap_or_default().to_string(),
            parameters: parameters_from_string(row.get(1).unwrap_or_default()),
            value: row.get(2).unwrap_or_default().to_string(),
            provenance: row.get(3).unwrap_or_default().to_string(),
        });
    }
    Ok(out)
}

pub fn to_json(records: &[OutputRecord]) -> String {
    serde_json::to_string_pretty(records).expect("json serialize")
}

pub fn from_json(text: &str) -> Result<Vec<OutputRecord>, serde_json::Error> {
    serde_json::from_str(text)
}
