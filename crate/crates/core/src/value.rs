//! Loosely typed values exchanged between computations, scenarios and
//! reports. Numbers are always carried as exact decimal strings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::{fmt_rat, int, Rat};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Str(String),
    List(Vec<Value>),
}

impl Value {
    #[must_use]
    pub fn as_str(&self) -> Option<&str> {
        match self {
            Self::Str(s) => Some(s),
            _ => None,
        }
    }

    #[must_use]
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Self::Bool(b) => Some(*b),
            _ => None,
        }
    }

    /// A list of integers, e.g. `["0","2","4","8"]`.
    #[must_use]
    pub fn ints(values: &[i64]) -> Self {
        Self::List(values.iter().map(|&v| Self::from(v)).collect())
    }

    #[must_use]
    pub fn rats(values: &[Rat]) -> Self {
        Self::List(values.iter().map(Self::from).collect())
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Bool(b) => write!(f, "{b}"),
            Self::Str(s) => f.write_str(s),
            Self::List(items) => {
                f.write_str("[")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Self::Bool(b)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Self::Str(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Self::Str(s)
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Self::from(&int(n))
    }
}

impl From<&Rat> for Value {
    fn from(q: &Rat) -> Self {
        Self::Str(fmt_rat(q))
    }
}

impl From<Rat> for Value {
    fn from(q: Rat) -> Self {
        Self::from(&q)
    }
}

impl<T: Into<Value>> From<Vec<T>> for Value {
    fn from(items: Vec<T>) -> Self {
        Self::List(items.into_iter().map(Into::into).collect())
    }
}
