//! Reference dual graphs for the exceptional unimodal singularities of
//! degree one and two, the A-chains and the two simple elliptic cases.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::Serialize;

use super::{fundamental_cycle, Component, ConfigSpec, Contact, CurveConfiguration, CurveKind};

/// Largest A-chain kept in the catalog.
pub const MAX_A: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub label: String,
    #[serde(skip)]
    pub config: CurveConfiguration,
    pub z_sq: i64,
    pub k_dot_z: i64,
    pub normal_form: String,
}

impl CatalogEntry {
    #[must_use]
    pub fn spec(&self) -> ConfigSpec {
        self.config.to_spec()
    }

    #[must_use]
    pub fn is_exceptional(&self) -> bool {
        matches!(self.label.chars().next(), Some('E' | 'Z' | 'W'))
    }
}

fn contact(i: usize, j: usize, mult: i64, points: u32) -> Contact {
    Contact { i, j, mult, points }
}

fn entry(
    label: &str,
    components: Vec<Component>,
    contacts: Vec<Contact>,
    concurrent: Vec<Vec<usize>>,
    stored: (i64, i64),
    normal_form: &str,
) -> CatalogEntry {
    let config = CurveConfiguration::new(components, contacts, concurrent).expect("catalog graph");
    CatalogEntry {
        label: label.to_string(),
        config,
        z_sq: stored.0,
        k_dot_z: stored.1,
        normal_form: normal_form.to_string(),
    }
}

fn rational(name: &str, self_int: i64) -> Component {
    Component::new(name, self_int, 0)
}

fn elliptic(name: &str, self_int: i64, kind: CurveKind) -> Component {
    Component::new(name, self_int, 1).with_kind(kind)
}

/// Three components meeting pairwise once at a single common point.
fn triple(label: &str, s: [i64; 3], stored: (i64, i64), nf: &str) -> CatalogEntry {
    entry(
        label,
        vec![rational("E1", s[0]), rational("E2", s[1]), rational("E3", s[2])],
        vec![contact(0, 1, 1, 1), contact(0, 2, 1, 1), contact(1, 2, 1, 1)],
        vec![vec![0, 1, 2]],
        stored,
        nf,
    )
}

/// Two components tangent at one point.
fn tangent(label: &str, s: [i64; 2], stored: (i64, i64), nf: &str) -> CatalogEntry {
    entry(label, vec![rational("E1", s[0]), rational("E2", s[1])], vec![contact(0, 1, 2, 1)], vec![], stored, nf)
}

fn build() -> Vec<CatalogEntry> {
    let mut out = vec![
        entry("E12", vec![elliptic("E1", -1, CurveKind::Cuspidal)], vec![], vec![], (-1, 1), "z^3+y^7+a*y^5*z"),
        tangent("E13", [-3, -2], (-1, 1), "z^3+y^5*z+a*y^8"),
        triple("E14", [-3, -2, -2], (-1, 1), "z^3+y^8+a*y^6*z"),
        entry("Z11", vec![elliptic("E1", -2, CurveKind::Cuspidal)], vec![], vec![], (-2, 2), "y*z^3+y^5+a*y^4*z"),
        tangent("Z12", [-4, -2], (-2, 2), "y*z^3+y^4*z+a*y^3*z^2"),
        triple("Z13", [-4, -2, -2], (-2, 2), "y*z^3+y^6+a*y^5*z"),
        tangent("W12", [-3, -3], (-2, 2), "z^4+y^5+a*y^3*z^2"),
        triple("W13", [-3, -2, -3], (-2, 2), "z^4+y^4*z+a*y^6"),
    ];
    for n in 1..=MAX_A {
        let chain = CurveConfiguration::a_chain(n);
        out.push(CatalogEntry {
            label: format!("A{n}"),
            config: chain,
            z_sq: -2,
            k_dot_z: 0,
            normal_form: format!("x^2+y^{}", n + 1),
        });
    }
    // Simple elliptic and cusp-type degree-one points; more values of n
    // slot in here if a construction ever needs them.
    out.push(entry(
        "T2,3,6",
        vec![elliptic("E1", -1, CurveKind::Smooth)],
        vec![],
        vec![],
        (-1, 1),
        "x^2+y^3+z^6+l*x*y*z",
    ));
    out.push(entry(
        "T2,3,7",
        vec![elliptic("E1", -1, CurveKind::Nodal)],
        vec![],
        vec![],
        (-1, 1),
        "x^2+y^3+z^7+l*x*y*z",
    ));
    out
}

/// All catalog entries, exceptional ones first.
#[must_use]
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

#[must_use]
pub fn lookup(label: &str) -> Option<&'static CatalogEntry> {
    catalog().iter().find(|e| e.label == label)
}

/// Recomputed (Z², K·Z, p_a(Z)) for an entry.
#[must_use]
pub fn recompute(entry: &CatalogEntry) -> (i64, i64, i64) {
    let z = fundamental_cycle(&entry.config).expect("catalog graphs are negative definite");
    (z.z_sq, z.k_dot_z, z.pa)
}

fn same_vertex(a: &Component, b: &Component) -> bool {
    a.self_int == b.self_int && a.pa == b.pa && a.kind == b.kind
}

fn edge_key(c: Option<&Contact>) -> Option<(i64, u32)> {
    c.map(|c| (c.mult, c.points))
}

/// Backtracking search for a bijection `a -> b` preserving vertex data,
/// contact data and concurrency sets.
#[must_use]
pub fn isomorphic(a: &CurveConfiguration, b: &CurveConfiguration) -> bool {
    if a.len() != b.len() || a.contacts().len() != b.contacts().len() {
        return false;
    }
    let mut map = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    extend(a, b, 0, &mut map, &mut used)
}

fn extend(a: &CurveConfiguration, b: &CurveConfiguration, depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if depth == a.len() {
        let image: BTreeSet<BTreeSet<usize>> =
            a.concurrent().iter().map(|set| set.iter().map(|&k| map[k]).collect()).collect();
        let target: BTreeSet<BTreeSet<usize>> = b.concurrent().iter().cloned().collect();
        return image == target;
    }
    for cand in 0..b.len() {
        if used[cand] || !same_vertex(&a.components()[depth], &b.components()[cand]) {
            continue;
        }
        let consistent =
            (0..depth).all(|prev| edge_key(a.contact(prev, depth)) == edge_key(b.contact(map[prev], cand)));
        if !consistent {
            continue;
        }
        map[depth] = cand;
        used[cand] = true;
        if extend(a, b, depth + 1, map, used) {
            return true;
        }
        used[cand] = false;
    }
    map[depth] = usize::MAX;
    false
}

#[must_use]
pub fn match_catalog(config: &CurveConfiguration) -> Option<&'static CatalogEntry> {
    catalog().iter().find(|e| isomorphic(config, &e.config))
}
