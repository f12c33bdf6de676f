//! One JSON object per evaluated quantity.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// An input field: indices are integers, ₃F₂ parameters are `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Input {
    /// Integer index or degree.
    Int(i64),
    /// Exact rational or other textual input.
    Text(String),
}

impl From<i64> for Input {
    fn from(v: i64) -> Self {
        Input::Int(v)
    }
}

impl From<u32> for Input {
    fn from(v: u32) -> Self {
        Input::Int(i64::from(v))
    }
}

impl From<String> for Input {
    fn from(v: String) -> Self {
        Input::Text(v)
    }
}

/// `{"inputs":{...},"value":..,"err":..,"provenance":..,"effort":..,"hodge":..?}`
///
/// Keys of `inputs` are kept sorted so output is stable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    /// What was evaluated.
    pub inputs: BTreeMap<String, Input>,
    /// The value.
    pub value: f64,
    /// Bound on its absolute error.
    pub err: f64,
    /// Evaluation route, e.g. `closed-form` or `kernel-quadrature`.
    pub provenance: String,
    /// Series terms plus quadrature nodes spent.
    pub effort: u64,
    /// Hodge-class flag, present for mixed forms only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge: Option<bool>,
}

impl OutputRecord {
    /// Record with no inputs yet.
    pub fn new(value: f64, err: f64, provenance: &str, effort: u64) -> Self {
        OutputRecord {
            inputs: BTreeMap::new(),
            value,
            err,
            provenance: provenance.to_owned(),
            effort,
            hodge: None,
        }
    }

    /// Adds an input field.
    pub fn input(mut self, key: &str, v: impl Into<Input>) -> Self {
        self.inputs.insert(key.to_owned(), v.into());
        self
    }

    /// Sets the Hodge flag.
    pub fn hodge(mut self, flag: bool) -> Self {
        self.hodge = Some(flag);
        self
    }

    /// Single-line JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record fields are always serialisable")
    }
}

/// A table row whose evaluation failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    /// What was evaluated.
    pub inputs: BTreeMap<String, Input>,
    /// Diagnostic.
    pub error: String,
}
