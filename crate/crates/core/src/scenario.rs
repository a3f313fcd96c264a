//! Scenario files: a versioned JSON description of one computation plus
//! the values it is expected to produce.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::ConfigSpec;
use crate::serial::uint_str;
use crate::value::Value;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScenarioError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unsupported schema version {0:?} (expected {SCHEMA_VERSION:?})")]
    Version(String),
    #[error("invalid payload: {0}")]
    Payload(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    /// Printed in the source being verified.
    Stated,
    /// Obtained by an independent calculation.
    Derived,
    /// Immediate from the setup, or an injected fault.
    Trivial,
}

impl Origin {
    #[must_use]
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Stated => "stated",
            Self::Derived => "derived",
            Self::Trivial => "trivial",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub value: Value,
    pub origin: Origin,
    #[serde(default)]
    pub anchor: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyPayload {
    pub row: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
}

fn default_t_index() -> u32 {
    6
}

fn is_default_t_index(n: &u32) -> bool {
    *n == 6
}

fn is_zero(n: &u64) -> bool {
    *n == 0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunPayload {
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(default = "default_t_index", with = "uint_str", skip_serializing_if = "is_default_t_index")]
    pub t_index: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exceptional: Option<ConfigSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyPayload>,
    #[serde(default, with = "uint_str", skip_serializing_if = "is_zero")]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelinePayload {
    pub runs: Vec<RunPayload>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigPayload {
    pub config: ConfigSpec,
}

/// A plane curve: either an expression or a sparse map from `"i,j,k"`
/// (exponents of x, y, z) to an exact coefficient string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormPayload {
    Text(String),
    Sparse(BTreeMap<String, String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanePayload {
    pub form: FormPayload,
    pub point: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub marked: Vec<String>,
    /// Two factors whose product is `form`, for splitting invariants.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<[FormPayload; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimsPayload {
    pub row: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "kebab-case")]
pub enum Body {
    Pipeline(PipelinePayload),
    ConfigCheck(ConfigPayload),
    PlaneCheck(PlanePayload),
    DimsCheck(DimsPayload),
}

impl Body {
    #[must_use]
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Pipeline(_) => "pipeline",
            Self::ConfigCheck(_) => "config-check",
            Self::PlaneCheck(_) => "plane-check",
            Self::DimsCheck(_) => "dims-check",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub schema_version: String,
    pub name: String,
    #[serde(flatten)]
    pub body: Body,
    #[serde(default)]
    pub expect: BTreeMap<String, Expectation>,
}

impl Scenario {
    /// Parses and validates the schema version.
    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        let scenario: Self = serde_json::from_str(text).map_err(|e| {
            let full = e.to_string();
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            let message = full.strip_suffix(&suffix).unwrap_or(&full).to_string();
            ScenarioError::Parse { line: e.line(), column: e.column(), message }
        })?;
        if scenario.schema_version != SCHEMA_VERSION {
            return Err(ScenarioError::Version(scenario.schema_version));
        }
        Ok(scenario)
    }

    /// Canonical JSON: sorted keys, two-space indentation, trailing newline.
    #[must_use]
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("scenarios serialize");
        let mut out = serde_json::to_string_pretty(&value).expect("values serialize");
        out.push('\n');
        out
    }
}
