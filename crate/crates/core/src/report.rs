//! Structured results of sampled and exact checks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::exterior::CPoint;

/// One named measurement compared against a threshold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub value: Value,
    pub threshold: Option<f64>,
    pub pass: bool,
    pub witness: Option<Value>,
}

impl CheckResult {
    /// Passes when `value ≤ threshold`.
    pub fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        CheckResult {
            name: name.into(),
            value: json_f64(value),
            threshold: Some(threshold),
            pass: value <= threshold,
            witness: None,
        }
    }

    /// Passes when `value > threshold`.
    pub fn above(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        CheckResult {
            name: name.into(),
            value: json_f64(value),
            threshold: Some(threshold),
            pass: value > threshold,
            witness: None,
        }
    }

    pub fn flag(name: impl Into<String>, value: impl Serialize, pass: bool) -> Self {
        CheckResult {
            name: name.into(),
            value: serde_json::to_value(value).unwrap_or(Value::Null),
            threshold: None,
            pass,
            witness: None,
        }
    }

    pub fn with_witness(mut self, witness: impl Serialize) -> Self {
        self.witness = serde_json::to_value(witness).ok();
        self
    }
}

/// Converts to JSON, mapping non-finite values to `null`.
pub fn json_f64(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

/// A sample point singled out by a check, usually the worst case.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub parameter: Option<f64>,
    pub point: CPoint,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub sample_count: usize,
    pub seed: Option<u64>,
    pub min_abs_value: Option<f64>,
    pub max_residual: Option<f64>,
    /// Informational: whether all contact values share one sign.
    pub sign_consistent: Option<bool>,
    pub witnesses: Vec<Witness>,
    pub tolerances: BTreeMap<String, f64>,
    pub results: Vec<CheckResult>,
    pub notes: Vec<String>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>) -> Self {
        VerificationReport {
            check: check.into(),
            params: BTreeMap::new(),
            sample_count: 0,
            seed: None,
            min_abs_value: None,
            max_residual: None,
            sign_consistent: None,
            witnesses: Vec::new(),
            tolerances: BTreeMap::new(),
            results: Vec::new(),
            notes: Vec::new(),
            pass: false,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    pub fn tolerance(mut self, key: &str, value: f64) -> Self {
        self.tolerances.insert(key.to_string(), value);
        self
    }

    pub fn push(&mut self, result: CheckResult) {
        self.results.push(result);
    }

    /// Sets `pass` to the conjunction of all results (false when empty).
    pub fn finish(mut self) -> Self {
        self.pass = !self.results.is_empty() && self.results.iter().all(|r| r.pass);
        self
    }
}
