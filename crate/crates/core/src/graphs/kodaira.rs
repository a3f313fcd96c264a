//! Recognition of the few Kodaira fibre types the constructions meet, and
//! the Euler-number bookkeeping on an elliptic fibration.

use std::fmt;

use serde::Serialize;

use super::{cycle_genus, is_negative_semidefinite, radical_dim, CurveConfiguration, CurveKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FiberType {
    I(u32),
    II,
    III,
    IV,
}

impl FiberType {
    /// Topological Euler number of the fibre.
    #[must_use]
    pub fn euler(self) -> i64 {
        match self {
            Self::I(n) => i64::from(n),
            Self::II => 2,
            Self::III => 3,
            Self::IV => 4,
        }
    }

    /// Parses `I0`, `I4`, `II`, `III`, `IV`.
    #[must_use]
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "II" => Some(Self::II),
            "III" => Some(Self::III),
            "IV" => Some(Self::IV),
            other => other.strip_prefix('I')?.parse().ok().map(Self::I),
        }
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::I(n) => write!(f, "I{n}"),
            Self::II => f.write_str("II"),
            Self::III => f.write_str("III"),
            Self::IV => f.write_str("IV"),
        }
    }
}

fn all_minus_two_rational(config: &CurveConfiguration) -> bool {
    config.components().iter().all(|c| c.self_int == -2 && c.pa == 0)
}

/// Every vertex has exactly two transverse neighbours and the graph is one cycle.
fn is_simple_cycle(config: &CurveConfiguration) -> bool {
    let n = config.len();
    config.contacts().len() == n
        && config.contacts().iter().all(|c| c.mult == 1)
        && (0..n).all(|v| config.contacts().iter().filter(|c| c.i == v || c.j == v).count() == 2)
        && config.is_connected()
}

#[must_use]
pub fn recognize_kodaira_fiber(config: &CurveConfiguration) -> Option<FiberType> {
    if config.is_empty() || !config.is_connected() || !is_negative_semidefinite(config) {
        return None;
    }
    let ones = vec![1; config.len()];
    if radical_dim(config) != 1 || config.pairing_vector(&ones).iter().any(|&v| v != 0) {
        return None;
    }
    if cycle_genus(config, &ones) != 1 {
        return None;
    }
    match config.len() {
        1 => {
            let c = &config.components()[0];
            match c.kind {
                CurveKind::Smooth => Some(FiberType::I(0)),
                CurveKind::Nodal => Some(FiberType::I(1)),
                CurveKind::Cuspidal => Some(FiberType::II),
                CurveKind::Other => None,
            }
        }
        2 if all_minus_two_rational(config) => match config.contacts().first()? {
            c if c.mult == 2 && c.points == 2 => Some(FiberType::I(2)),
            c if c.mult == 2 && c.points == 1 => Some(FiberType::III),
            _ => None,
        },
        n if all_minus_two_rational(config) && is_simple_cycle(config) => {
            let concurrent = config.concurrent().iter().any(|s| s.len() >= 3);
            match (n, concurrent) {
                (3, true) => Some(FiberType::IV),
                (_, false) => Some(FiberType::I(u32::try_from(n).ok()?)),
                _ => None,
            }
        }
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerBudget {
    pub total: i64,
    pub required: i64,
    pub remainder: i64,
    pub feasible: bool,
}

/// Checks that the required fibres plus the multiple fibre fit in the
/// Euler number `total`; any remainder is filled with I1 fibres.
#[must_use]
pub fn euler_budget(required: &[FiberType], total: i64, multiple: FiberType) -> EulerBudget {
    let used: i64 = required.iter().map(|f| f.euler()).sum::<i64>() + multiple.euler();
    let remainder = total - used;
    EulerBudget { total, required: used, remainder, feasible: total >= 0 && remainder >= 0 }
}
