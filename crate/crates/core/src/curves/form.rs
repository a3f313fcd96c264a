//! Plane curves: homogeneous forms in x, y, z, points and lines of ℙ²,
//! projectivities, and affine charts around a point.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use super::poly::{ParsePolyError, Poly};
use crate::rational::{det, fmt_rat, int, parse_rat, Matrix, Rat};

pub const XYZ: [&str; 3] = ["x", "y", "z"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error(transparent)]
    Parse(#[from] ParsePolyError),
    #[error("{0} is not homogeneous")]
    NotHomogeneous(String),
    #[error("the zero vector is not a point of the plane")]
    ZeroPoint,
    #[error("cannot parse point {0:?}")]
    BadPoint(String),
    #[error("point {point} does not lie on the line")]
    PointOffLine { point: String },
    #[error("projectivity is singular")]
    SingularProjectivity,
    #[error("the linear system is empty")]
    EmptyFamily,
    #[error("the form vanishes identically on the line")]
    LineComponent,
}

fn normalize(mut v: [Rat; 3]) -> Option<[Rat; 3]> {
    let lead = v.iter().find(|c| !c.is_zero())?.clone();
    for c in &mut v {
        *c /= &lead;
    }
    Some(v)
}

fn render3(v: &[Rat; 3]) -> String {
    format!("[{}:{}:{}]", fmt_rat(&v[0]), fmt_rat(&v[1]), fmt_rat(&v[2]))
}

/// A point of ℙ²(ℚ), scaled so its first nonzero coordinate is one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint([Rat; 3]);

impl ProjPoint {
    pub fn new(coords: [Rat; 3]) -> Result<Self, CurveError> {
        normalize(coords).map(Self).ok_or(CurveError::ZeroPoint)
    }

    #[must_use]
    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Self::new([int(x), int(y), int(z)]).expect("nonzero point")
    }

    #[must_use]
    pub fn coords(&self) -> &[Rat; 3] {
        &self.0
    }

    /// Parses `[1:0:0]` or `1:0:0`.
    pub fn parse(s: &str) -> Result<Self, CurveError> {
        let bad = || CurveError::BadPoint(s.to_string());
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<Rat> =
            inner.split(':').map(|p| parse_rat(p.trim())).collect::<Result<_, _>>().map_err(|_| bad())?;
        let arr: [Rat; 3] = parts.try_into().map_err(|_| bad())?;
        Self::new(arr)
    }

    /// Index of the affine chart used for local computations.
    #[must_use]
    pub fn chart(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).expect("normalized")
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render3(&self.0))
    }
}

/// A line a·x + b·y + c·z = 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line([Rat; 3]);

impl Line {
    pub fn new(coeffs: [Rat; 3]) -> Result<Self, CurveError> {
        normalize(coeffs).map(Self).ok_or(CurveError::ZeroPoint)
    }

    #[must_use]
    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        Self::new([int(a), int(b), int(c)]).expect("nonzero line")
    }

    #[must_use]
    pub fn coeffs(&self) -> &[Rat; 3] {
        &self.0
    }

    #[must_use]
    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.0.iter().zip(p.coords()).fold(Rat::zero(), |acc, (a, b)| acc + a * b).is_zero()
    }

    /// Two points spanning the line.
    #[must_use]
    pub fn basis(&self) -> (ProjPoint, ProjPoint) {
        let [a, b, c] = &self.0;
        let z = Rat::zero();
        let candidates =
            [[b.clone(), -a.clone(), z.clone()], [c.clone(), z.clone(), -a.clone()], [z, c.clone(), -b.clone()]];
        let mut found: Vec<ProjPoint> = Vec::new();
        for v in candidates {
            if let Ok(p) = ProjPoint::new(v) {
                if !found.contains(&p) {
                    found.push(p);
                }
            }
        }
        (found[0].clone(), found[1].clone())
    }

    /// The line through two distinct points.
    #[must_use]
    pub fn through(p: &ProjPoint, q: &ProjPoint) -> Self {
        let (a, b) = (p.coords(), q.coords());
        Self::new([&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]])
            .expect("distinct points")
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render3(&self.0))
    }
}

/// An invertible 3×3 matrix acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projectivity(Matrix);

impl Projectivity {
    pub fn new(m: Matrix) -> Result<Self, CurveError> {
        if m.len() != 3 || m.iter().any(|r| r.len() != 3) || det(&m).is_zero() {
            return Err(CurveError::SingularProjectivity);
        }
        Ok(Self(m))
    }

    #[must_use]
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    #[must_use]
    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let v = p.coords();
        let img: Vec<Rat> =
            self.0.iter().map(|r| r.iter().zip(v).fold(Rat::zero(), |acc, (a, b)| acc + a * b)).collect();
        ProjPoint::new(img.try_into().expect("three coordinates")).expect("invertible")
    }

    /// The image of a line: ℓ ↦ ℓ·g⁻¹.
    #[must_use]
    pub fn apply_line(&self, l: &Line) -> Line {
        let inv = self.inverse();
        let a = l.coeffs();
        let img: Vec<Rat> = (0..3).map(|j| (0..3).fold(Rat::zero(), |acc, i| acc + &a[i] * &inv.0[i][j])).collect();
        Line::new(img.try_into().expect("three coefficients")).expect("invertible")
    }

    #[must_use]
    pub fn inverse(&self) -> Self {
        let m = &self.0;
        let d = det(m);
        let cof = |i: usize, j: usize| {
            let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
            let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
            &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
        };
        Self((0..3).map(|i| (0..3).map(|j| cof(j, i) / &d).collect()).collect())
    }
}

/// A plane curve given by a homogeneous form in x, y, z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousForm {
    degree: u32,
    poly: Poly,
}

impl HomogeneousForm {
    pub fn new(poly: Poly) -> Result<Self, CurveError> {
        if !poly.is_homogeneous() || poly.nvars() != 3 {
            return Err(CurveError::NotHomogeneous(poly.render(&XYZ)));
        }
        Ok(Self { degree: poly.total_degree().unwrap_or(0), poly })
    }

    pub fn parse(s: &str) -> Result<Self, CurveError> {
        Self::new(Poly::parse(s, &XYZ)?)
    }

    #[must_use]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[must_use]
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    #[must_use]
    pub fn eval(&self, p: &ProjPoint) -> Rat {
        self.poly.eval(p.coords())
    }

    /// Local equation at `p` in the chart where `p`'s leading coordinate is
    /// one; the local coordinates are the two remaining ones, shifted.
    #[must_use]
    pub fn dehomogenize(&self, p: &ProjPoint) -> Poly {
        dehomogenize(&self.poly, p)
    }

    /// The pullback F∘g, whose zero set is g⁻¹ of the curve.
    #[must_use]
    pub fn pullback(&self, g: &Projectivity) -> Self {
        let subs: Vec<Poly> = g
            .matrix()
            .iter()
            .map(|row| row.iter().enumerate().fold(Poly::zero(3), |acc, (j, c)| &acc + &Poly::var(3, j).scale(c)))
            .collect();
        Self { degree: self.degree, poly: self.poly.compose(&subs) }
    }

    /// The image curve g(C), defined by F∘g⁻¹.
    #[must_use]
    pub fn transform(&self, g: &Projectivity) -> Self {
        self.pullback(&g.inverse())
    }
}

impl fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.render(&XYZ))
    }
}

/// Dehomogenizes any polynomial in three variables at `p`.
#[must_use]
pub fn dehomogenize(poly: &Poly, p: &ProjPoint) -> Poly {
    let i = p.chart();
    let c = p.coords();
    let mut local = 0;
    let subs: Vec<Poly> = (0..3)
        .map(|k| {
            if k == i {
                Poly::constant(2, Rat::one())
            } else {
                let v = &Poly::var(2, local) + &Poly::constant(2, c[k].clone());
                local += 1;
                v
            }
        })
        .collect();
    poly.compose(&subs)
}
