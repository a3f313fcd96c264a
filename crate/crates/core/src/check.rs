//! Named comparisons between an expected and a computed value.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::discrepancy;
use crate::value::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

impl Status {
    #[must_use]
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::Flagged => "flagged",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub computed: Value,
    pub status: Status,
    pub anchor: String,
}

impl Check {
    /// Equal values pass; a registered discrepancy is flagged; anything else fails.
    #[must_use]
    pub fn evaluate(context: &str, name: &str, expected: Value, computed: Value, anchor: &str) -> Self {
        let status = if expected == computed {
            Status::Pass
        } else if discrepancy::lookup(context, name, &expected, &computed).is_some() {
            Status::Flagged
        } else {
            Status::Fail
        };
        Self { name: name.to_string(), expected, computed, status, anchor: anchor.to_string() }
    }
}

/// Collects every computed value of a run plus the checks asserted on them.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Checklist {
    context: String,
    checks: Vec<Check>,
    values: BTreeMap<String, Value>,
}

impl Checklist {
    #[must_use]
    pub fn new(context: &str) -> Self {
        Self { context: context.to_string(), ..Self::default() }
    }

    #[must_use]
    pub fn context(&self) -> &str {
        &self.context
    }

    pub fn record(&mut self, name: &str, value: impl Into<Value>) {
        self.values.insert(name.to_string(), value.into());
    }

    pub fn check(&mut self, name: &str, expected: impl Into<Value>, computed: impl Into<Value>, anchor: &str) {
        let computed = computed.into();
        self.values.insert(name.to_string(), computed.clone());
        self.checks.push(Check::evaluate(&self.context, name, expected.into(), computed, anchor));
    }

    #[must_use]
    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    #[must_use]
    pub fn values(&self) -> &BTreeMap<String, Value> {
        &self.values
    }

    #[must_use]
    pub fn value(&self, name: &str) -> Option<&Value> {
        self.values.get(name)
    }

    #[must_use]
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    #[must_use]
    pub fn all_passed(&self) -> bool {
        self.failures().is_empty()
    }
}
