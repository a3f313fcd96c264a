//! Local invariants at a point: dimensions of local algebras (Milnor and
//! intersection numbers), A_n recognition and [3,3]-point detection.

use std::fmt;

use serde::Serialize;

use super::echelon::{Echelon, SparseRow};
use super::form::{dehomogenize, HomogeneousForm, ProjPoint};
use super::germ::{blow_up, tangent_cone, TangentCone};
use super::poly::Poly;
use crate::rational::{rank, Rat};

/// Truncation degrees tried in turn: 4, 8, 16, 32.
const START_DEGREE: u32 = 4;
const DOUBLINGS: u32 = 3;

/// Index of the monomial u^a v^b among those of degree < N, graded.
fn mono_index(a: u32, b: u32) -> usize {
    let d = (a + b) as usize;
    d * (d + 1) / 2 + b as usize
}

/// dim ℚ[u, v]/(I + m^N).
fn truncated_colength(gens: &[Poly], n: u32) -> usize {
    let total = (n * (n + 1) / 2) as usize;
    let mut ech = Echelon::new();
    for g in gens {
        let Some(ord) = g.order() else { continue };
        if ord >= n {
            continue;
        }
        let g = g.truncate(n);
        for d in 0..(n - ord) {
            for a in 0..=d {
                let b = d - a;
                let row: SparseRow = g
                    .terms()
                    .iter()
                    .filter(|(e, _)| e[0] + e[1] + d < n)
                    .map(|(e, c)| (mono_index(e[0] + a, e[1] + b), c.clone()))
                    .collect();
                ech.insert(row);
            }
        }
    }
    total - ech.rank()
}

/// dim ℚ[[u, v]]/I when I is primary to the maximal ideal, detected by two
/// consecutive truncations agreeing; `None` when that never happens.
#[must_use]
pub fn local_algebra_dim(gens: &[Poly]) -> Option<usize> {
    let mut n = START_DEGREE;
    let mut prev = truncated_colength(gens, n);
    for _ in 0..DOUBLINGS {
        n *= 2;
        let next = truncated_colength(gens, n);
        if next == prev {
            return Some(next);
        }
        prev = next;
    }
    None
}

/// Milnor number of a germ at the origin.
#[must_use]
pub fn milnor_number(f: &Poly) -> Option<usize> {
    local_algebra_dim(&[f.derivative(0), f.derivative(1)])
}

/// Local intersection multiplicity at the origin.
#[must_use]
pub fn intersection_number(f: &Poly, g: &Poly) -> Option<usize> {
    local_algebra_dim(&[f.clone(), g.clone()])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AnType {
    NotOnCurve,
    Smooth,
    A(u32),
    Other,
    Inconclusive,
}

impl fmt::Display for AnType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotOnCurve => f.write_str("not-on-curve"),
            Self::Smooth => f.write_str("smooth"),
            Self::A(n) => write!(f, "A{n}"),
            Self::Other => f.write_str("other"),
            Self::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

/// Classifies a germ at the origin: a double point of corank one is A_μ.
#[must_use]
pub fn an_type_of_germ(f: &Poly) -> AnType {
    match f.order() {
        None => AnType::Other,
        Some(0) => AnType::NotOnCurve,
        Some(1) => AnType::Smooth,
        Some(2) => {
            let q = f.homogeneous_part(2);
            let (a, b, c) = (q.coeff(&[2, 0]), q.coeff(&[1, 1]), q.coeff(&[0, 2]));
            let half = b / Rat::from_integer(2.into());
            if rank(&vec![vec![a, half.clone()], vec![half, c]]) == 2 {
                return AnType::A(1);
            }
            match milnor_number(f) {
                Some(mu) => AnType::A(mu as u32),
                None => AnType::Inconclusive,
            }
        }
        Some(_) => AnType::Other,
    }
}

#[must_use]
pub fn an_type_at(form: &HomogeneousForm, p: &ProjPoint) -> AnType {
    an_type_of_germ(&form.dehomogenize(p))
}

/// Outcome of the [3,3]-point test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ThreeThree {
    /// Not a triple point with an infinitely near triple point.
    No,
    /// A [3,3]-point of type T₂,₃,ₙ; `n` is `None` when the second triple
    /// point has a single tangent direction.
    Yes { n: Option<u32> },
    /// A needed tangent direction is not defined over ℚ.
    Undecidable,
}

fn triple_child(f: &Poly, cone: &TangentCone) -> Result<Option<Poly>, ()> {
    if cone.irrational.iter().any(|g| g.mult >= 3) {
        return Err(());
    }
    Ok(cone.rational.iter().find(|fac| fac.mult == 3).map(|fac| blow_up(f, &fac.direction, 3)))
}

/// Detects whether a germ is a [3,3]-point and reads off n of T₂,₃,ₙ:
/// a reduced cone at the second triple point gives 6; a double direction
/// whose next point is smooth gives 7, or 7 + k when that point is A_k.
#[must_use]
pub fn detect_33_germ(f: &Poly) -> ThreeThree {
    let Some(cone) = tangent_cone(f) else { return ThreeThree::No };
    if cone.mult != 3 {
        return ThreeThree::No;
    }
    let child = match triple_child(f, &cone) {
        Err(()) => return ThreeThree::Undecidable,
        Ok(None) => return ThreeThree::No,
        Ok(Some(c)) => c,
    };
    let Some(cone2) = tangent_cone(&child) else { return ThreeThree::No };
    if cone2.mult != 3 {
        return ThreeThree::No;
    }
    if cone2.is_reduced() {
        return ThreeThree::Yes { n: Some(6) };
    }
    if cone2.irrational.iter().any(|g| g.mult > 1) {
        return ThreeThree::Undecidable;
    }
    let double = cone2.rational.iter().find(|fac| fac.mult == 2);
    let Some(double) = double else { return ThreeThree::Yes { n: None } };
    let next = blow_up(&child, &double.direction, 3);
    match an_type_of_germ(&next) {
        AnType::Smooth => ThreeThree::Yes { n: Some(7) },
        AnType::A(k) => ThreeThree::Yes { n: Some(7 + k) },
        AnType::Inconclusive => ThreeThree::Undecidable,
        AnType::NotOnCurve | AnType::Other => ThreeThree::No,
    }
}

#[must_use]
pub fn detect_33_point(form: &HomogeneousForm, p: &ProjPoint) -> ThreeThree {
    detect_33_germ(&form.dehomogenize(p))
}

/// Numbers attached to a splitting of a [3,3]-germ into two curves:
/// their local intersection number and the A-type of the first one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Splitting {
    pub intersection: Option<usize>,
    pub first_type: AnType,
}

#[must_use]
pub fn splitting_invariants(first: &Poly, second: &Poly, p: &ProjPoint) -> Splitting {
    let (a, b) = (dehomogenize(first, p), dehomogenize(second, p));
    Splitting { intersection: intersection_number(&a, &b), first_type: an_type_of_germ(&a) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn germ(s: &str) -> Poly {
        Poly::parse(s, &["y", "z"]).unwrap()
    }

    #[test]
    fn milnor_of_simple_germs() {
        assert_eq!(milnor_number(&germ("y^2+z^5")), Some(4));
        assert_eq!(milnor_number(&germ("y^3+z^4")), Some(6));
        assert_eq!(milnor_number(&germ("y^2")), None);
    }

    #[test]
    fn intersection_numbers() {
        assert_eq!(intersection_number(&germ("y"), &germ("y-z^3")), Some(3));
        assert_eq!(intersection_number(&germ("y^2-z^3"), &germ("y")), Some(3));
    }

    #[test]
    fn an_types() {
        for n in 1..=6 {
            assert_eq!(an_type_of_germ(&germ(&format!("y^2+z^{}", n + 1))), AnType::A(n));
        }
        assert_eq!(an_type_of_germ(&germ("1+y")), AnType::NotOnCurve);
        assert_eq!(an_type_of_germ(&germ("y+z^2")), AnType::Smooth);
        assert_eq!(an_type_of_germ(&germ("y^3+z^3")), AnType::Other);
    }

    #[test]
    fn three_three_points() {
        assert_eq!(detect_33_germ(&germ("y^3+y^2*z^2+z^6")), ThreeThree::Yes { n: Some(6) });
        assert_eq!(detect_33_germ(&germ("y^3+y^2*z^2+z^7")), ThreeThree::Yes { n: Some(7) });
        assert_eq!(detect_33_germ(&germ("y^3+y^2*z^2+z^8")), ThreeThree::Yes { n: Some(8) });
        assert_eq!(detect_33_germ(&germ("y^3+z^3")), ThreeThree::No);
        assert_eq!(detect_33_germ(&germ("y^2+z^3")), ThreeThree::No);
    }
}
