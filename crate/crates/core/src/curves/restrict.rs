//! Restriction of a plane curve to a line.

use num_traits::Zero;
use serde::Serialize;

use super::form::{CurveError, HomogeneousForm, Line, ProjPoint};
use super::poly::Poly;
use super::univariate::UniPoly;
use crate::rational::{solve, Rat};

/// Vanishing orders of F|ℓ at the marked points and what is left over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineRestriction {
    pub orders: Vec<u32>,
    pub residual_degree: u32,
    /// Distinct roots of the residual over ℚ̄.
    pub residual_distinct: u32,
}

/// Writes `m` as α·p + β·q.
fn coordinates_on_line(m: &ProjPoint, p: &ProjPoint, q: &ProjPoint) -> (Rat, Rat) {
    let (mc, pc, qc) = (m.coords(), p.coords(), q.coords());
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let a = vec![vec![pc[i].clone(), qc[i].clone()], vec![pc[j].clone(), qc[j].clone()]];
        if let Some(sol) = solve(&a, &[mc[i].clone(), mc[j].clone()]) {
            return (sol[0].clone(), sol[1].clone());
        }
    }
    unreachable!("p and q span the line")
}

/// F(p + t·q) as a univariate polynomial in t.
fn along(form: &HomogeneousForm, p: &ProjPoint, q: &ProjPoint) -> UniPoly {
    let subs: Vec<Poly> =
        (0..3).map(|i| &Poly::constant(1, p.coords()[i].clone()) + &Poly::var(1, 0).scale(&q.coords()[i])).collect();
    let g = form.poly().compose(&subs);
    let deg = g.total_degree().unwrap_or(0) as usize;
    let mut coeffs = vec![Rat::zero(); deg + 1];
    for (e, c) in g.terms() {
        coeffs[e[0] as usize] = c.clone();
    }
    UniPoly::new(coeffs)
}

pub fn restrict_to_line(
    form: &HomogeneousForm,
    line: &Line,
    marked: &[ProjPoint],
) -> Result<LineRestriction, CurveError> {
    if let Some(m) = marked.iter().find(|m| !line.contains(m)) {
        return Err(CurveError::PointOffLine { point: m.to_string() });
    }
    let (p, q) = line.basis();
    let mut b = along(form, &p, &q);
    if b.is_zero() {
        return Err(CurveError::LineComponent);
    }
    let d = form.degree();
    // Roots at t = ∞ correspond to q.
    let mut at_infinity = d - b.degree().unwrap_or(0) as u32;
    let mut orders = Vec::new();
    for m in marked {
        let (alpha, beta) = coordinates_on_line(m, &p, &q);
        if alpha.is_zero() {
            orders.push(at_infinity);
            at_infinity = 0;
            continue;
        }
        let root = beta / alpha;
        let lin = UniPoly::new(vec![-root.clone(), Rat::from_integer(1.into())]);
        let mut k = 0;
        while !b.is_zero() && b.eval(&root).is_zero() {
            b = b.div_rem(&lin).0;
            k += 1;
        }
        orders.push(k);
    }
    let finite = b.degree().unwrap_or(0) as u32;
    let squarefree: u32 = b.squarefree_decomposition().iter().map(|(f, _)| f.degree().unwrap_or(0) as u32).sum();
    Ok(LineRestriction {
        orders,
        residual_degree: finite + at_infinity,
        residual_distinct: squarefree + u32::from(at_infinity > 0),
    })
}
