//! Machine-readable run reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// SHA-256 of the canonical JSON of the inputs.
    pub input_digest: String,
    pub result: Value,
    pub residuals: BTreeMap<String, f64>,
    pub tolerances_used: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case_tag: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Canonical text: keys sorted, floats in shortest round-trip form, no
/// whitespace.
pub fn canonical_json(v: &Value) -> String {
    // serde_json's default map is ordered by key and floats print via
    // shortest round-trip formatting.
    serde_json::to_string(v).expect("Value serializes")
}

pub fn digest(input: &Value) -> String {
    hex::encode(Sha256::digest(canonical_json(input).as_bytes()))
}

impl Report {
    pub fn new(command: &str, input: &Value, tolerances: &Tolerances) -> Self {
        Self {
            command: command.to_string(),
            input_digest: digest(input),
            result: Value::Null,
            residuals: BTreeMap::new(),
            tolerances_used: *tolerances,
            case_tag: None,
            warnings: Vec::new(),
        }
    }

    /// Records a residual; non-finite values are kept out of the map and
    /// flagged in `warnings`.
    pub fn residual(&mut self, name: &str, value: f64) {
        if value.is_finite() {
            self.residuals.insert(name.to_string(), value);
        } else {
            self.warnings
                .push(format!("residual {name} is not finite ({value})"));
        }
    }

    pub fn set_error(&mut self, e: &Error) {
        self.result = serde_json::json!({
            "error": { "kind": e.kind(), "message": e.to_string() }
        });
    }

    pub fn to_json(&self, compact: bool) -> String {
        if compact {
            serde_json::to_string(self)
        } else {
            serde_json::to_string_pretty(self)
        }
        .expect("report serializes")
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn digest_ignores_key_order() {
        let a: Value = serde_json::from_str(r#"{"b": 1.5, "a": [1, 2]}"#).unwrap();
        let b: Value = serde_json::from_str(r#"{"a": [1, 2], "b": 1.5}"#).unwrap();
        assert_eq!(canonical_json(&a), r#"{"a":[1,2],"b":1.5}"#);
        assert_eq!(digest(&a), digest(&b));
        assert_eq!(digest(&a).len(), 64);
    }

    #[test]
    fn round_trip() {
        let mut r = Report::new("info", &json!({"builtin": "sl2"}), &Tolerances::default());
        r.residual("jacobi", 0.0);
        r.residual("broken", f64::NAN);
        r.case_tag = Some("GeodesicNormal".into());
        let back = Report::from_json(&r.to_json(true)).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.warnings.len(), 1);
        assert!(!r.residuals.contains_key("broken"));
    }
}
