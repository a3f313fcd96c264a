//! Weighted curve configurations: Gram matrices, negative definiteness,
//! Laufer's fundamental cycle and the minimally elliptic test.

pub mod catalog;
pub mod kodaira;

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{det, int, principal, rank, Matrix};
use crate::serial::{int_str, uint_str};

pub use catalog::{catalog, isomorphic, lookup, match_catalog, CatalogEntry};
pub use kodaira::{euler_budget, recognize_kodaira_fiber, EulerBudget, FiberType};

/// Upper bound on Laufer steps before the loop is declared runaway.
pub const LAUFER_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("configuration has no components")]
    Empty,
    #[error("unknown component {0:?}")]
    UnknownComponent(String),
    #[error("duplicate component name {0:?}")]
    DuplicateName(String),
    #[error("contact between {0:?} and {1:?} is recorded twice")]
    DuplicateContact(String, String),
    #[error("contact of {0:?} with itself")]
    SelfContact(String),
    #[error("contact multiplicity must be positive, got {0}")]
    NonPositiveContact(i64),
    #[error("contact points must be between 1 and the multiplicity")]
    BadContactPoints,
    #[error("negative arithmetic genus on {0:?}")]
    NegativeGenus(String),
    #[error("intersection form is not negative definite")]
    NotNegativeDefinite,
    #[error("Laufer loop exceeded {0} steps")]
    IterationCap(usize),
}

/// Singularity shape of an irreducible curve; matters for genus-one
/// components, where the Gram data alone cannot separate the cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    #[default]
    Smooth,
    Nodal,
    Cuspidal,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub name: String,
    #[serde(with = "int_str")]
    pub self_int: i64,
    #[serde(with = "int_str")]
    pub pa: i64,
    #[serde(default)]
    pub kind: CurveKind,
}

impl Component {
    #[must_use]
    pub fn new(name: &str, self_int: i64, pa: i64) -> Self {
        Self { name: name.to_string(), self_int, pa, kind: CurveKind::Smooth }
    }

    #[must_use]
    pub fn with_kind(mut self, kind: CurveKind) -> Self {
        self.kind = kind;
        self
    }

    /// K·C from adjunction.
    #[must_use]
    pub fn k_dot(&self) -> i64 {
        2 * self.pa - 2 - self.self_int
    }
}

/// Intersection of two distinct components: total multiplicity spread over
/// `points` distinct points (a single tangency has `points = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Contact {
    pub i: usize,
    pub j: usize,
    pub mult: i64,
    pub points: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveConfiguration {
    components: Vec<Component>,
    contacts: Vec<Contact>,
    concurrent: Vec<BTreeSet<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactSpec {
    pub a: String,
    pub b: String,
    #[serde(with = "int_str")]
    pub mult: i64,
    #[serde(with = "uint_str")]
    pub points: u32,
}

/// Name-based wire form of a configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigSpec {
    pub components: Vec<Component>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub contacts: Vec<ContactSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub concurrent: Vec<Vec<String>>,
}

impl CurveConfiguration {
    pub fn new(
        components: Vec<Component>,
        contacts: Vec<Contact>,
        concurrent: Vec<Vec<usize>>,
    ) -> Result<Self, ConfigError> {
        if components.is_empty() {
            return Err(ConfigError::Empty);
        }
        let mut names = BTreeSet::new();
        for c in &components {
            if !names.insert(c.name.as_str()) {
                return Err(ConfigError::DuplicateName(c.name.clone()));
            }
            if c.pa < 0 {
                return Err(ConfigError::NegativeGenus(c.name.clone()));
            }
        }
        let n = components.len();
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::with_capacity(contacts.len());
        for c in contacts {
            if c.i >= n || c.j >= n {
                return Err(ConfigError::UnknownComponent(format!("#{}", c.i.max(c.j))));
            }
            if c.i == c.j {
                return Err(ConfigError::SelfContact(components[c.i].name.clone()));
            }
            if c.mult <= 0 {
                return Err(ConfigError::NonPositiveContact(c.mult));
            }
            if c.points == 0 || i64::from(c.points) > c.mult {
                return Err(ConfigError::BadContactPoints);
            }
            let (i, j) = (c.i.min(c.j), c.i.max(c.j));
            if !seen.insert((i, j)) {
                return Err(ConfigError::DuplicateContact(components[i].name.clone(), components[j].name.clone()));
            }
            normalized.push(Contact { i, j, ..c });
        }
        normalized.sort_by_key(|c| (c.i, c.j));
        let mut concurrent: Vec<BTreeSet<usize>> =
            concurrent.into_iter().map(|set| set.into_iter().collect::<BTreeSet<_>>()).collect();
        for set in &concurrent {
            if let Some(&bad) = set.iter().find(|&&k| k >= n) {
                return Err(ConfigError::UnknownComponent(format!("#{bad}")));
            }
        }
        concurrent.sort();
        concurrent.dedup();
        Ok(Self { components, contacts: normalized, concurrent })
    }

    /// Chain of `n` smooth rational (-2)-curves.
    #[must_use]
    pub fn a_chain(n: usize) -> Self {
        let components = (1..=n).map(|k| Component::new(&format!("A{k}"), -2, 0)).collect();
        let contacts = (0..n.saturating_sub(1)).map(|k| Contact { i: k, j: k + 1, mult: 1, points: 1 }).collect();
        Self::new(components, contacts, Vec::new()).expect("well-formed chain")
    }

    pub fn from_spec(spec: &ConfigSpec) -> Result<Self, ConfigError> {
        let index = |name: &str| {
            spec.components
                .iter()
                .position(|c| c.name == name)
                .ok_or_else(|| ConfigError::UnknownComponent(name.to_string()))
        };
        let contacts = spec
            .contacts
            .iter()
            .map(|c| Ok(Contact { i: index(&c.a)?, j: index(&c.b)?, mult: c.mult, points: c.points }))
            .collect::<Result<Vec<_>, ConfigError>>()?;
        let concurrent = spec
            .concurrent
            .iter()
            .map(|set| set.iter().map(|n| index(n)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(spec.components.clone(), contacts, concurrent)
    }

    #[must_use]
    pub fn to_spec(&self) -> ConfigSpec {
        let name = |i: usize| self.components[i].name.clone();
        ConfigSpec {
            components: self.components.clone(),
            contacts: self
                .contacts
                .iter()
                .map(|c| ContactSpec { a: name(c.i), b: name(c.j), mult: c.mult, points: c.points })
                .collect(),
            concurrent: self.concurrent.iter().map(|set| set.iter().map(|&i| name(i)).collect()).collect(),
        }
    }

    #[must_use]
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    #[must_use]
    pub fn contacts(&self) -> &[Contact] {
        &self.contacts
    }

    #[must_use]
    pub fn concurrent(&self) -> &[BTreeSet<usize>] {
        &self.concurrent
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.components.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    #[must_use]
    pub fn contact(&self, i: usize, j: usize) -> Option<&Contact> {
        let (a, b) = (i.min(j), i.max(j));
        self.contacts.iter().find(|c| c.i == a && c.j == b)
    }

    /// Integer Gram matrix: self-intersections on the diagonal, contact
    /// multiplicities off it.
    #[must_use]
    pub fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut g = vec![vec![0; n]; n];
        for (i, c) in self.components.iter().enumerate() {
            g[i][i] = c.self_int;
        }
        for c in &self.contacts {
            g[c.i][c.j] = c.mult;
            g[c.j][c.i] = c.mult;
        }
        g
    }

    #[must_use]
    pub fn gram_rat(&self) -> Matrix {
        self.gram().iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    /// K·Eᵢ for every component.
    #[must_use]
    pub fn k_vector(&self) -> Vec<i64> {
        self.components.iter().map(Component::k_dot).collect()
    }

    #[must_use]
    pub fn is_connected(&self) -> bool {
        self.is_connected_subset(&(0..self.len()).collect::<Vec<_>>())
    }

    fn is_connected_subset(&self, subset: &[usize]) -> bool {
        let Some(&start) = subset.first() else {
            return false;
        };
        let members: BTreeSet<usize> = subset.iter().copied().collect();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for c in &self.contacts {
                let other = if c.i == v {
                    c.j
                } else if c.j == v {
                    c.i
                } else {
                    continue;
                };
                if members.contains(&other) && seen.insert(other) {
                    stack.push(other);
                }
            }
        }
        seen.len() == members.len()
    }

    /// The subconfiguration on `subset` (indices renumbered in order).
    #[must_use]
    pub fn restrict(&self, subset: &[usize]) -> Self {
        let pos = |k: usize| subset.iter().position(|&s| s == k);
        let components = subset.iter().map(|&k| self.components[k].clone()).collect();
        let contacts =
            self.contacts.iter().filter_map(|c| Some(Contact { i: pos(c.i)?, j: pos(c.j)?, ..*c })).collect();
        let concurrent = self
            .concurrent
            .iter()
            .filter(|set| set.iter().all(|&k| pos(k).is_some()))
            .map(|set| set.iter().filter_map(|&k| pos(k)).collect())
            .collect();
        Self::new(components, contacts, concurrent).expect("restriction of a valid configuration")
    }

    /// Applies a relabeling: component `k` moves to position `perm[k]`.
    #[must_use]
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut components = self.components.clone();
        for (k, c) in self.components.iter().enumerate() {
            components[perm[k]] = c.clone();
        }
        let contacts = self.contacts.iter().map(|c| Contact { i: perm[c.i], j: perm[c.j], ..*c }).collect();
        let concurrent = self.concurrent.iter().map(|set| set.iter().map(|&k| perm[k]).collect()).collect();
        Self::new(components, contacts, concurrent).expect("permutation of a valid configuration")
    }

    /// Z·Eᵢ for a cycle `z` with integer coefficients.
    #[must_use]
    pub fn pairing_vector(&self, z: &[i64]) -> Vec<i64> {
        let g = self.gram();
        g.iter().map(|row| row.iter().zip(z).map(|(a, b)| a * b).sum()).collect()
    }

    #[must_use]
    pub fn self_pairing(&self, z: &[i64]) -> i64 {
        self.pairing_vector(z).iter().zip(z).map(|(a, b)| a * b).sum()
    }

    #[must_use]
    pub fn k_pairing(&self, z: &[i64]) -> i64 {
        self.k_vector().iter().zip(z).map(|(a, b)| a * b).sum()
    }
}

/// Sylvester: leading principal minors alternate in sign, starting negative.
#[must_use]
pub fn is_negative_definite(config: &CurveConfiguration) -> bool {
    let g = config.gram_rat();
    (1..=g.len()).all(|k| {
        let minor = det(&principal(&g, &(0..k).collect::<Vec<_>>()));
        if k % 2 == 1 {
            minor.is_negative()
        } else {
            minor.is_positive()
        }
    })
}

/// Every principal minor of order k has sign (-1)^k or vanishes.
#[must_use]
pub fn is_negative_semidefinite(config: &CurveConfiguration) -> bool {
    let g = config.gram_rat();
    let n = g.len();
    (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let minor = det(&principal(&g, &idx));
        minor.is_zero() || (minor.is_negative() == (idx.len() % 2 == 1))
    })
}

/// Dimension of the radical of the intersection form.
#[must_use]
pub fn radical_dim(config: &CurveConfiguration) -> usize {
    config.len() - rank(&config.gram_rat())
}

/// p_a of an integral cycle: 1 + (Z² + K·Z)/2.
#[must_use]
pub fn cycle_genus(config: &CurveConfiguration, z: &[i64]) -> i64 {
    1 + (config.self_pairing(z) + config.k_pairing(z)) / 2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FundamentalCycle {
    pub coeffs: Vec<i64>,
    pub z_sq: i64,
    pub k_dot_z: i64,
    pub pa: i64,
    pub steps: usize,
}

/// Laufer's algorithm: start from the reduced cycle and add any component
/// the current cycle meets positively.
pub fn fundamental_cycle(config: &CurveConfiguration) -> Result<FundamentalCycle, ConfigError> {
    if !is_negative_definite(config) {
        return Err(ConfigError::NotNegativeDefinite);
    }
    let mut z = vec![1i64; config.len()];
    let mut steps = 0;
    loop {
        let pairing = config.pairing_vector(&z);
        match pairing.iter().position(|&p| p > 0) {
            None => break,
            Some(i) => {
                z[i] += 1;
                steps += 1;
                if steps > LAUFER_CAP {
                    return Err(ConfigError::IterationCap(LAUFER_CAP));
                }
            }
        }
    }
    let z_sq = config.self_pairing(&z);
    let k_dot_z = config.k_pairing(&z);
    Ok(FundamentalCycle { pa: 1 + (z_sq + k_dot_z) / 2, coeffs: z, z_sq, k_dot_z, steps })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Ellipticity {
    MinimallyElliptic { degree: i64 },
    Rational,
    NotElliptic,
}

impl Ellipticity {
    #[must_use]
    pub fn label(&self) -> String {
        match self {
            Self::MinimallyElliptic { degree } => format!("minimally-elliptic:{degree}"),
            Self::Rational => "rational".to_string(),
            Self::NotElliptic => "not-elliptic".to_string(),
        }
    }
}

/// Nonempty proper subsets of `0..n` whose induced graph is connected.
fn proper_connected_subsets(config: &CurveConfiguration) -> Vec<Vec<usize>> {
    let n = config.len();
    (1u32..(1 << n) - 1)
        .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect::<Vec<_>>())
        .filter(|idx| config.is_connected_subset(idx))
        .collect()
}

pub fn classify_minimally_elliptic(config: &CurveConfiguration) -> Result<Ellipticity, ConfigError> {
    let z = fundamental_cycle(config)?;
    match z.pa {
        0 => Ok(Ellipticity::Rational),
        1 => {
            for subset in proper_connected_subsets(config) {
                let sub = fundamental_cycle(&config.restrict(&subset))?;
                if sub.pa != 0 {
                    return Ok(Ellipticity::NotElliptic);
                }
            }
            Ok(Ellipticity::MinimallyElliptic { degree: -z.z_sq })
        }
        _ => Ok(Ellipticity::NotElliptic),
    }
}
