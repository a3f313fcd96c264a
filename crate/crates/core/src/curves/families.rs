//! Sextic families Δ = (fixed binary sextic) + z·f₅ whose restriction to
//! the line z = 0 has a prescribed pattern, with their dimension counts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::form::{CurveError, HomogeneousForm, Line, ProjPoint, XYZ};
use super::linsys::{monomials, orbit_dim_count, ConditionSystem, Family, Marking};
use super::local::an_type_at;
use super::poly::Poly;
use super::restrict::restrict_to_line;
use crate::rational::{fmt_rat, int, Rat};

const SAMPLES: u64 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown family row {0:?}")]
    UnknownRow(String),
    #[error("row {row} has no variant {variant:?}")]
    UnknownVariant { row: String, variant: String },
    #[error(transparent)]
    Curve(#[from] CurveError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Normalization {
    /// [1:0:0] and one more marked point of z = 0.
    TwoPoints,
    /// [1:0:0] and the line z = 0.
    PointAndLine,
}

/// One row of the table: the z = 0 part is written with `l` for λ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyRow {
    pub label: &'static str,
    pub variant: &'static str,
    pub line_part: &'static str,
    /// Marked points on z = 0, written with `l` for λ, and their orders.
    pub pattern: &'static [(&'static str, u32)],
    /// λ must avoid these values; `None` when the row has no λ.
    pub lambda_excluded: Option<&'static [i64]>,
    pub excluded: &'static [[u32; 3]],
    normalization: Normalization,
    pub stated_count: i64,
    /// Expected A-type of Δ at [1:0:0], when asserted.
    pub mark: Option<&'static str>,
}

const X5: [u32; 3] = [5, 0, 0];
const X4Y: [u32; 3] = [4, 1, 0];

#[rustfmt::skip]
const ROWS: &[FamilyRow] = &[
    FamilyRow { label: "Z11-1", variant: "default", line_part: "y^3*(l*x-y)^2*(x-y)", pattern: &[("1:0:0", 3), ("1:l:0", 2), ("1:1:0", 1)], lambda_excluded: Some(&[0, 1]), excluded: &[], normalization: Normalization::TwoPoints, stated_count: 18, mark: Some("smooth") },
    FamilyRow { label: "Z11-2", variant: "default", line_part: "y^3*(x-y)^3", pattern: &[("1:0:0", 3), ("1:1:0", 3)], lambda_excluded: None, excluded: &[], normalization: Normalization::TwoPoints, stated_count: 17, mark: Some("smooth") },
    FamilyRow { label: "Z11-3", variant: "default", line_part: "y^5*(x-y)", pattern: &[("1:0:0", 5), ("1:1:0", 1)], lambda_excluded: None, excluded: &[], normalization: Normalization::TwoPoints, stated_count: 17, mark: Some("smooth") },
    FamilyRow { label: "W12-1", variant: "default", line_part: "y^4*(y-l*x)^2", pattern: &[("1:0:0", 4), ("1:l:0", 2)], lambda_excluded: Some(&[0]), excluded: &[], normalization: Normalization::PointAndLine, stated_count: 17, mark: Some("smooth") },
    FamilyRow { label: "W12-2", variant: "default", line_part: "y^6", pattern: &[("1:0:0", 6)], lambda_excluded: None, excluded: &[], normalization: Normalization::PointAndLine, stated_count: 16, mark: Some("smooth") },
    FamilyRow { label: "W13", variant: "default", line_part: "y^4*x^2", pattern: &[("1:0:0", 4), ("0:1:0", 2)], lambda_excluded: None, excluded: &[X5], normalization: Normalization::TwoPoints, stated_count: 16, mark: Some("A1") },
    FamilyRow { label: "Z12-1", variant: "default", line_part: "y^3*x^2*(x-l*y)", pattern: &[("1:0:0", 3), ("0:1:0", 2), ("l:1:0", 1)], lambda_excluded: Some(&[0]), excluded: &[X5], normalization: Normalization::TwoPoints, stated_count: 17, mark: Some("A1") },
    FamilyRow { label: "Z12-2", variant: "default", line_part: "y^3*x^3", pattern: &[("1:0:0", 3), ("0:1:0", 3)], lambda_excluded: None, excluded: &[X5], normalization: Normalization::TwoPoints, stated_count: 16, mark: Some("A1") },
    FamilyRow { label: "Z13-1", variant: "default", line_part: "y^3*x^2*(x-l*y)", pattern: &[("1:0:0", 3), ("0:1:0", 2), ("l:1:0", 1)], lambda_excluded: Some(&[0]), excluded: &[X5, X4Y], normalization: Normalization::TwoPoints, stated_count: 16, mark: Some("A2") },
    FamilyRow { label: "Z13-2", variant: "stated", line_part: "y^3*x^3", pattern: &[("1:0:0", 3), ("0:1:0", 3)], lambda_excluded: None, excluded: &[X5], normalization: Normalization::TwoPoints, stated_count: 15, mark: None },
    FamilyRow { label: "Z13-2", variant: "x4y-excluded", line_part: "y^3*x^3", pattern: &[("1:0:0", 3), ("0:1:0", 3)], lambda_excluded: None, excluded: &[X5, X4Y], normalization: Normalization::TwoPoints, stated_count: 15, mark: Some("A2") },
];

#[must_use]
pub fn rows() -> &'static [FamilyRow] {
    ROWS
}

/// Looks a row up; `variant = None` picks the first listed.
pub fn find_row(label: &str, variant: Option<&str>) -> Result<&'static FamilyRow, FamilyError> {
    let mut candidates = ROWS.iter().filter(|r| r.label == label).peekable();
    if candidates.peek().is_none() {
        return Err(FamilyError::UnknownRow(label.to_string()));
    }
    match variant {
        None => Ok(candidates.next().expect("peeked")),
        Some(v) => candidates
            .find(|r| r.variant == v)
            .ok_or_else(|| FamilyError::UnknownVariant { row: label.to_string(), variant: v.to_string() }),
    }
}

impl FamilyRow {
    /// Singularity type the row belongs to, e.g. `Z13` for `Z13-2`.
    #[must_use]
    pub fn type_label(&self) -> &'static str {
        self.label.split('-').next().unwrap_or(self.label)
    }

    fn substitute(text: &str, lambda: &Rat) -> String {
        text.replace('l', &format!("({})", fmt_rat(lambda)))
    }

    fn marked_points(&self, lambda: &Rat) -> Result<Vec<(ProjPoint, u32)>, CurveError> {
        self.pattern.iter().map(|(p, k)| Ok((ProjPoint::parse(&p.replace('l', &fmt_rat(lambda)))?, *k))).collect()
    }

    /// The f₅ coefficient space, λ, and the normalization markings.
    pub fn family(&self) -> Result<Family, CurveError> {
        let system = self.excluded.iter().fold(ConditionSystem::new(5), |s, &e| s.without_monomial(e));
        let p1 = ProjPoint::from_ints(1, 0, 0);
        let markings = match self.normalization {
            Normalization::TwoPoints => {
                let second =
                    self.pattern.iter().find(|(p, _)| !p.contains('l') && *p != "1:0:0").map_or("0:1:0", |(p, _)| p);
                vec![Marking::Point(p1), Marking::Point(ProjPoint::parse(second)?)]
            }
            Normalization::PointAndLine => vec![Marking::Point(p1), Marking::Line(Line::from_ints(0, 0, 1))],
        };
        Ok(Family { system, params: u32::from(self.lambda_excluded.is_some()), markings })
    }

    /// Coefficients of f₅ plus λ minus the stabilizer of the normalization.
    pub fn count(&self) -> Result<i64, FamilyError> {
        Ok(orbit_dim_count(&self.family()?)?)
    }

    /// A member of the family for the given λ and f₅.
    pub fn member(&self, lambda: &Rat, f5: &Poly) -> Result<HomogeneousForm, FamilyError> {
        let base = Poly::parse(&Self::substitute(self.line_part, lambda), &XYZ).map_err(CurveError::from)?;
        Ok(HomogeneousForm::new(&base + &(&Poly::var(3, 2) * f5))?)
    }

    fn random_member(&self, rng: &mut ChaCha8Rng) -> Result<(Rat, HomogeneousForm), FamilyError> {
        let lambda = match self.lambda_excluded {
            Some(bad) => loop {
                let v: i64 = rng.gen_range(-9..=9);
                if !bad.contains(&v) {
                    break int(v);
                }
            },
            None => int(1),
        };
        let terms = monomials(5).into_iter().filter(|e| !self.excluded.contains(e)).map(|e| {
            let mag: i64 = rng.gen_range(1..=9);
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            (e.to_vec(), int(sign * mag))
        });
        let f5 = Poly::from_terms(3, terms.collect::<Vec<_>>());
        Ok((lambda.clone(), self.member(&lambda, &f5)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub row: String,
    pub variant: String,
    /// Every sample restricts to z = 0 with exactly the prescribed orders.
    pub pattern_ok: bool,
    pub expected_mark: Option<String>,
    /// A-type at [1:0:0], or `unstable` when the samples disagree.
    pub mark: String,
    pub stated_count: i64,
    pub count: i64,
    pub samples: Vec<String>,
}

/// Samples random members (seeded) and checks the restriction pattern and
/// the type at [1:0:0], then computes the dimension count.
pub fn verify_family(label: &str, variant: Option<&str>, seed: u64) -> Result<FamilyReport, FamilyError> {
    let row = find_row(label, variant)?;
    let z0 = Line::from_ints(0, 0, 1);
    let p1 = ProjPoint::from_ints(1, 0, 0);
    let mut pattern_ok = true;
    let mut marks = Vec::new();
    let mut samples = Vec::new();
    for i in 0..SAMPLES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
        let (lambda, delta) = row.random_member(&mut rng)?;
        let marked = row.marked_points(&lambda)?;
        let points: Vec<ProjPoint> = marked.iter().map(|(p, _)| p.clone()).collect();
        let r = restrict_to_line(&delta, &z0, &points)?;
        let expected: Vec<u32> = marked.iter().map(|(_, k)| *k).collect();
        pattern_ok &= r.orders == expected && r.residual_degree == 0;
        marks.push(an_type_at(&delta, &p1).to_string());
        samples.push(delta.to_string());
    }
    marks.dedup();
    let mark = if marks.len() == 1 { marks.remove(0) } else { "unstable".to_string() };
    Ok(FamilyReport {
        row: row.label.to_string(),
        variant: row.variant.to_string(),
        pattern_ok,
        expected_mark: row.mark.map(str::to_string),
        mark,
        stated_count: row.stated_count,
        count: row.count()?,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let got: Vec<(&str, &str, i64)> = ROWS.iter().map(|r| (r.label, r.variant, r.count().unwrap())).collect();
        assert_eq!(
            got,
            vec![
                ("Z11-1", "default", 18),
                ("Z11-2", "default", 17),
                ("Z11-3", "default", 17),
                ("W12-1", "default", 17),
                ("W12-2", "default", 16),
                ("W13", "default", 16),
                ("Z12-1", "default", 17),
                ("Z12-2", "default", 16),
                ("Z13-1", "default", 16),
                ("Z13-2", "stated", 16),
                ("Z13-2", "x4y-excluded", 15),
            ]
        );
    }

    #[test]
    fn every_row_verifies() {
        for row in ROWS {
            let rep = verify_family(row.label, Some(row.variant), 7).unwrap();
            assert!(rep.pattern_ok, "{}", row.label);
            if let Some(m) = &rep.expected_mark {
                assert_eq!(&rep.mark, m, "{}", row.label);
            }
        }
        assert_eq!(verify_family("Z13-2", None, 1).unwrap().mark, "A1");
    }

    #[test]
    fn lookup_errors() {
        assert_eq!(find_row("Z14", None), Err(FamilyError::UnknownRow("Z14".into())));
        assert!(matches!(find_row("W13", Some("other")), Err(FamilyError::UnknownVariant { .. })));
    }

    #[test]
    fn seeded_samples_are_reproducible() {
        assert_eq!(verify_family("Z11-1", None, 3).unwrap(), verify_family("Z11-1", None, 3).unwrap());
    }
}
