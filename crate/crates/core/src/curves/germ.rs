//! Plane curve germs at the origin of ℚ²: tangent cones, blow-ups and the
//! tree of multiplicities of infinitely near points.

use num_traits::Zero;
use serde::Serialize;

use super::poly::Poly;
use super::univariate::UniPoly;
use crate::rational::{fmt_rat, Rat};

/// A tangent direction at the origin of the (u, v) chart.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Direction {
    /// v = t·u.
    Slope(Rat),
    /// u = 0.
    Vertical,
}

impl Direction {
    #[must_use]
    pub fn label(&self) -> String {
        match self {
            Self::Slope(t) => format!("v={}u", fmt_rat(t)),
            Self::Vertical => "u=0".to_string(),
        }
    }
}

/// One linear factor of the tangent cone, counted with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeFactor {
    pub direction: Direction,
    pub mult: u32,
}

/// Square-free part of the cone without rational roots: `degree` distinct
/// conjugate directions, each of multiplicity `mult`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IrrationalGroup {
    pub degree: u32,
    pub mult: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentCone {
    pub mult: u32,
    pub rational: Vec<ConeFactor>,
    pub irrational: Vec<IrrationalGroup>,
}

impl TangentCone {
    #[must_use]
    pub fn is_reduced(&self) -> bool {
        self.rational.iter().all(|f| f.mult == 1) && self.irrational.iter().all(|g| g.mult == 1)
    }

    #[must_use]
    pub fn distinct_directions(&self) -> u32 {
        self.rational.len() as u32 + self.irrational.iter().map(|g| g.degree).sum::<u32>()
    }
}

/// Tangent cone of `f` (two variables) at the origin, or `None` when
/// `f` is zero.
#[must_use]
pub fn tangent_cone(f: &Poly) -> Option<TangentCone> {
    let m = f.order()?;
    let h = f.homogeneous_part(m);
    // h(u, v) = Σ c_i u^{m−i} v^i, so h(1, t) = Σ c_i t^i.
    let mut coeffs = vec![Rat::zero(); m as usize + 1];
    for (e, c) in h.terms() {
        coeffs[e[1] as usize] = c.clone();
    }
    let g = UniPoly::new(coeffs);
    let deg = g.degree().unwrap_or(0) as u32;
    let mut rational = Vec::new();
    let mut irrational = Vec::new();
    if deg < m {
        rational.push(ConeFactor { direction: Direction::Vertical, mult: m - deg });
    }
    for (factor, mult) in g.squarefree_decomposition() {
        let roots = factor.rational_roots();
        for t in &roots {
            rational.push(ConeFactor { direction: Direction::Slope(t.clone()), mult });
        }
        let rest = factor.degree().unwrap_or(0) as u32 - roots.len() as u32;
        if rest > 0 {
            irrational.push(IrrationalGroup { degree: rest, mult });
        }
    }
    rational.sort_by(|a, b| a.direction.cmp(&b.direction));
    Some(TangentCone { mult: m, rational, irrational })
}

/// Strict transform at the point of the exceptional curve in direction `d`,
/// in coordinates centred there. `m` is the multiplicity of `f`.
#[must_use]
pub fn blow_up(f: &Poly, d: &Direction, m: u32) -> Poly {
    let u = Poly::var(2, 0);
    let w = Poly::var(2, 1);
    match d {
        Direction::Slope(t) => {
            let v = &u * &(&w + &Poly::constant(2, t.clone()));
            f.compose(&[u, v]).div_var_power(0, m).expect("order m")
        }
        Direction::Vertical => {
            // u = v·w: the new first coordinate is v, so the exceptional curve is again u = 0.
            let subs = [&w * &u, u.clone()];
            f.compose(&subs).div_var_power(0, m).expect("order m")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultNode {
    pub mult: u32,
    /// Children along rational directions, labelled by direction.
    pub children: Vec<(String, MultNode)>,
    /// Irrational directions: multiplicity-one groups are smooth branches;
    /// higher groups are not followed further.
    pub irrational: Vec<IrrationalGroup>,
    /// Set when the depth bound stopped the expansion below a singular point.
    pub truncated: bool,
}

impl MultNode {
    /// Multiplicities of the main branch, descending into the child of
    /// highest multiplicity: `(2, 2, 1)` for y² + z⁵.
    #[must_use]
    pub fn sequence(&self) -> Vec<u32> {
        let mut out = vec![self.mult];
        let mut node = self;
        while let Some((_, next)) = node.children.iter().max_by_key(|(_, c)| c.mult) {
            if next.mult == 0 {
                break;
            }
            out.push(next.mult);
            node = next;
        }
        out
    }

    /// δ = Σ m(m − 1)/2, or `None` when part of the tree is unknown.
    #[must_use]
    pub fn delta(&self) -> Option<u32> {
        if self.truncated || self.irrational.iter().any(|g| g.mult > 1) {
            return None;
        }
        let own = self.mult * self.mult.saturating_sub(1) / 2;
        self.children.iter().try_fold(own, |acc, (_, c)| Some(acc + c.delta()?))
    }
}

/// Expands the tree of infinitely near points up to `depth` blow-ups.
#[must_use]
pub fn mult_tree(f: &Poly, depth: u32) -> MultNode {
    let Some(cone) = tangent_cone(f) else {
        return MultNode { mult: u32::MAX, children: Vec::new(), irrational: Vec::new(), truncated: true };
    };
    if cone.mult <= 1 {
        return MultNode { mult: cone.mult, children: Vec::new(), irrational: Vec::new(), truncated: false };
    }
    if depth == 0 {
        return MultNode { mult: cone.mult, children: Vec::new(), irrational: cone.irrational, truncated: true };
    }
    let children = cone
        .rational
        .iter()
        .map(|fac| (fac.direction.label(), mult_tree(&blow_up(f, &fac.direction, cone.mult), depth - 1)))
        .collect();
    MultNode { mult: cone.mult, children, irrational: cone.irrational, truncated: false }
}
