//! Surfaces as finitely generated lattices with a symmetric pairing, a
//! canonical class and χ(𝒪), plus the tracked curves the constructions
//! care about.

mod moves;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::graphs::{ConfigError, CurveKind};
use crate::rational::{as_i64, bilinear, fmt_rat, frac, int, is_nonneg_integer, is_symmetric, Matrix, Rat};

pub use moves::{BlowUp, CoverSpec, DeclareSpec, ExtraCurve, Meet, ResolveSpec, SplitSpec, Step};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("Hirzebruch index must be non-negative, got {0}")]
    NegativeIndex(i64),
    #[error("classes live on different lattices")]
    LatticeMismatch,
    #[error("expected {expected} coefficients, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("unknown curve {0:?}")]
    UnknownCurve(String),
    #[error("name {0:?} is already in use")]
    DuplicateName(String),
    #[error("curve {name:?} has arithmetic genus {pa}, expected a non-negative integer")]
    BadGenus { name: String, pa: String },
    #[error("Euler characteristic {0} is not an integer")]
    NonIntegralChi(String),
    #[error("intersection matrix is singular")]
    Singular,
    #[error("exceptional configuration is neither rational nor minimally elliptic")]
    UnsupportedPoint,
    #[error("branch components exceed the class 2L")]
    BranchExceeds,
    #[error("configuration is not negative definite")]
    NotNegativeDefinite,
    #[error("configuration is not connected")]
    NotConnected,
    #[error("{0} is not an integer on the contracted configuration")]
    NonIntegralConfig(String),
    #[error("contraction is not Gorenstein: {0}")]
    NonGorenstein(String),
    #[error("provenance log must start with a constructor step")]
    BadLog,
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// Named generators and their pairing matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    basis: Vec<String>,
    gram: Matrix,
}

impl IntersectionLattice {
    pub fn new(basis: Vec<String>, gram: Matrix) -> Result<Self, LatticeError> {
        if gram.len() != basis.len() || gram.iter().any(|r| r.len() != basis.len()) {
            return Err(LatticeError::Dimension { expected: basis.len(), got: gram.len() });
        }
        if !is_symmetric(&gram) {
            return Err(LatticeError::NotSymmetric);
        }
        let unique: BTreeSet<_> = basis.iter().collect();
        if unique.len() != basis.len() {
            return Err(LatticeError::DuplicateName(basis[0].clone()));
        }
        Ok(Self { basis, gram })
    }

    #[must_use]
    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    #[must_use]
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    #[must_use]
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }
}

/// Rational combination of basis elements of one lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    lattice: Arc<IntersectionLattice>,
    coeffs: Vec<Rat>,
}

impl DivisorClass {
    pub fn new(lattice: &Arc<IntersectionLattice>, coeffs: Vec<Rat>) -> Result<Self, LatticeError> {
        if coeffs.len() != lattice.rank() {
            return Err(LatticeError::Dimension { expected: lattice.rank(), got: coeffs.len() });
        }
        Ok(Self { lattice: Arc::clone(lattice), coeffs })
    }

    #[must_use]
    pub fn zero(lattice: &Arc<IntersectionLattice>) -> Self {
        Self { lattice: Arc::clone(lattice), coeffs: vec![Rat::zero(); lattice.rank()] }
    }

    #[must_use]
    pub fn basis_element(lattice: &Arc<IntersectionLattice>, i: usize) -> Self {
        let mut c = Self::zero(lattice);
        c.coeffs[i] = Rat::one();
        c
    }

    #[must_use]
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    #[must_use]
    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }

    fn same_lattice(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice == other.lattice
    }

    pub fn dot(&self, other: &Self) -> Result<Rat, LatticeError> {
        if !self.same_lattice(other) {
            return Err(LatticeError::LatticeMismatch);
        }
        Ok(bilinear(&self.lattice.gram, &self.coeffs, &other.coeffs))
    }

    #[must_use]
    pub fn square(&self) -> Rat {
        bilinear(&self.lattice.gram, &self.coeffs, &self.coeffs)
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    #[must_use]
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rat::is_integer)
    }

    /// Numerical equivalence: the difference pairs to zero with every generator.
    pub fn numerically_equal(&self, other: &Self) -> Result<bool, LatticeError> {
        let diff = self.try_sub(other)?;
        Ok((0..self.lattice.rank())
            .all(|i| bilinear(&self.lattice.gram, &diff.coeffs, &unit(self.lattice.rank(), i)).is_zero()))
    }

    fn try_sub(&self, other: &Self) -> Result<Self, LatticeError> {
        if !self.same_lattice(other) {
            return Err(LatticeError::LatticeMismatch);
        }
        Ok(self - other)
    }

    fn map_coeffs(&self, f: impl Fn(&Rat) -> Rat) -> Self {
        Self { lattice: Arc::clone(&self.lattice), coeffs: self.coeffs.iter().map(f).collect() }
    }
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.coeffs.iter().zip(self.lattice.basis()) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            let coef = if mag.is_one() {
                String::new()
            } else if mag.is_integer() {
                fmt_rat(&mag)
            } else {
                format!("({})", fmt_rat(&mag))
            };
            write!(f, "{sign}{coef}{name}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: Self) -> DivisorClass {
        debug_assert!(self.same_lattice(rhs));
        DivisorClass {
            lattice: Arc::clone(&self.lattice),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: Self) -> DivisorClass {
        debug_assert!(self.same_lattice(rhs));
        DivisorClass {
            lattice: Arc::clone(&self.lattice),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.map_coeffs(|c| -c)
    }
}

impl Mul<&DivisorClass> for &Rat {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.map_coeffs(|c| self * c)
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        &int(self) * rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackedCurve {
    pub name: String,
    pub cls: DivisorClass,
    pub pa: Rat,
    pub irreducible: bool,
    pub kind: CurveKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub label: String,
    pub kind: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Nakai {
    Ample,
    NefNotAmple,
    NotNef,
}

impl Nakai {
    #[must_use]
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ample => "ample",
            Self::NefNotAmple => "nef-not-ample",
            Self::NotNef => "not-nef",
        }
    }
}

fn pair_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// A surface up to numerical equivalence on a tracked sublattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    lattice: Arc<IntersectionLattice>,
    canonical: DivisorClass,
    chi: i64,
    tracked: Vec<TrackedCurve>,
    singular_points: Vec<SingularPoint>,
    contact_points: BTreeMap<(String, String), u32>,
    concurrent: Vec<BTreeSet<String>>,
    provenance: Vec<Step>,
}

impl SurfaceModel {
    /// The projective plane.
    #[must_use]
    pub fn make_p2() -> Self {
        Self::replay(&[Step::MakeP2]).expect("constructor step")
    }

    /// The Hirzebruch surface 𝔽ₙ with basis (C∞, Γ).
    pub fn make_hirzebruch(n: i64) -> Result<Self, LatticeError> {
        Self::replay(&[Step::MakeHirzebruch(n)])
    }

    /// Rebuilds a model from its provenance log.
    pub fn replay(log: &[Step]) -> Result<Self, LatticeError> {
        let (first, rest) = log.split_first().ok_or(LatticeError::BadLog)?;
        let mut model = moves::construct(first)?;
        for step in rest {
            model = model.apply(step)?;
        }
        Ok(model)
    }

    fn from_parts(
        lattice: Arc<IntersectionLattice>,
        canonical: Vec<Rat>,
        chi: &Rat,
        provenance: Vec<Step>,
    ) -> Result<Self, LatticeError> {
        let chi = as_i64(chi).ok_or_else(|| LatticeError::NonIntegralChi(fmt_rat(chi)))?;
        let canonical = DivisorClass::new(&lattice, canonical)?;
        Ok(Self {
            lattice,
            canonical,
            chi,
            tracked: Vec::new(),
            singular_points: Vec::new(),
            contact_points: BTreeMap::new(),
            concurrent: Vec::new(),
            provenance,
        })
    }

    #[must_use]
    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }

    #[must_use]
    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    #[must_use]
    pub fn chi(&self) -> i64 {
        self.chi
    }

    #[must_use]
    pub fn k_squared(&self) -> Rat {
        self.canonical.square()
    }

    /// c₂ from Noether's formula.
    #[must_use]
    pub fn c2(&self) -> Rat {
        int(12 * self.chi) - self.k_squared()
    }

    #[must_use]
    pub fn tracked(&self) -> &[TrackedCurve] {
        &self.tracked
    }

    #[must_use]
    pub fn singular_points(&self) -> &[SingularPoint] {
        &self.singular_points
    }

    #[must_use]
    pub fn is_smooth(&self) -> bool {
        self.singular_points.is_empty()
    }

    #[must_use]
    pub fn provenance(&self) -> &[Step] {
        &self.provenance
    }

    pub fn curve(&self, name: &str) -> Result<&TrackedCurve, LatticeError> {
        self.tracked.iter().find(|c| c.name == name).ok_or_else(|| LatticeError::UnknownCurve(name.to_string()))
    }

    pub fn class(&self, name: &str) -> Result<DivisorClass, LatticeError> {
        Ok(self.curve(name)?.cls.clone())
    }

    /// Class from `(basis name, coefficient)` terms.
    pub fn class_from_terms(&self, terms: &[(&str, i64)]) -> Result<DivisorClass, LatticeError> {
        let mut c = DivisorClass::zero(&self.lattice);
        for (name, coef) in terms {
            let i = self.lattice.index_of(name).ok_or_else(|| LatticeError::UnknownCurve((*name).to_string()))?;
            c.coeffs[i] += int(*coef);
        }
        Ok(c)
    }

    pub fn class_from_coeffs(&self, coeffs: Vec<Rat>) -> Result<DivisorClass, LatticeError> {
        DivisorClass::new(&self.lattice, coeffs)
    }

    /// Number of distinct points where two tracked curves meet, when annotated.
    #[must_use]
    pub fn contact_points(&self, a: &str, b: &str) -> Option<u32> {
        self.contact_points.get(&pair_key(a, b)).copied()
    }

    #[must_use]
    pub fn concurrent_sets(&self) -> &[BTreeSet<String>] {
        &self.concurrent
    }

    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<Rat, LatticeError> {
        if !a.same_lattice(&self.canonical) {
            return Err(LatticeError::LatticeMismatch);
        }
        a.dot(b)
    }

    /// 1 + (D² + K·D)/2.
    pub fn adjunction_pa(&self, d: &DivisorClass) -> Result<Rat, LatticeError> {
        let kd = self.intersect(&self.canonical, d)?;
        Ok(Rat::one() + (d.square() + kd) * frac(1, 2))
    }

    /// χ(𝒪) + (D² − K·D)/2.
    pub fn rr_chi(&self, d: &DivisorClass) -> Result<Rat, LatticeError> {
        let kd = self.intersect(&self.canonical, d)?;
        Ok(int(self.chi) + (d.square() - kd) * frac(1, 2))
    }

    /// Nakai–Moishezon judged against the irreducible tracked curves.
    pub fn nakai_check(&self, d: &DivisorClass) -> Result<Nakai, LatticeError> {
        let sq = self.intersect(d, d)?;
        let products =
            self.tracked.iter().filter(|c| c.irreducible).map(|c| d.dot(&c.cls)).collect::<Result<Vec<_>, _>>()?;
        if sq.is_negative() || products.iter().any(Signed::is_negative) {
            return Ok(Nakai::NotNef);
        }
        if sq.is_positive() && products.iter().all(Signed::is_positive) {
            Ok(Nakai::Ample)
        } else {
            Ok(Nakai::NefNotAmple)
        }
    }

    /// Applies one move and appends it to the provenance log.
    pub fn apply(&self, step: &Step) -> Result<Self, LatticeError> {
        let mut next = moves::apply(self, step)?;
        next.provenance = self.provenance.clone();
        next.provenance.push(step.clone());
        next.validate()?;
        Ok(next)
    }

    pub fn add_curve(
        &self,
        name: &str,
        cls: &DivisorClass,
        irreducible: bool,
        kind: CurveKind,
    ) -> Result<Self, LatticeError> {
        if !cls.same_lattice(&self.canonical) {
            return Err(LatticeError::LatticeMismatch);
        }
        self.apply(&Step::AddCurve { name: name.to_string(), coeffs: cls.coeffs.clone(), irreducible, kind })
    }

    pub fn annotate_contact(&self, a: &str, b: &str, points: u32) -> Result<Self, LatticeError> {
        self.apply(&Step::AnnotateContact { a: a.to_string(), b: b.to_string(), points })
    }

    pub fn annotate_concurrent(&self, names: &[&str]) -> Result<Self, LatticeError> {
        self.apply(&Step::AnnotateConcurrent(names.iter().map(|s| (*s).to_string()).collect()))
    }

    /// Records the singularity type of an irreducible curve (smooth, nodal, cuspidal).
    pub fn annotate_kind(&self, curve: &str, kind: CurveKind) -> Result<Self, LatticeError> {
        self.apply(&Step::AnnotateKind { curve: curve.to_string(), kind })
    }

    /// Blows up a smooth point lying on the named curves with the given
    /// multiplicities.
    pub fn blow_up(&self, exceptional: &str, center: &BTreeMap<String, i64>) -> Result<BlowUp, LatticeError> {
        moves::blow_up(self, exceptional, center)
    }

    pub fn double_cover(&self, spec: &CoverSpec) -> Result<Self, LatticeError> {
        self.apply(&Step::DoubleCover(spec.clone()))
    }

    pub fn resolve_point(&self, spec: &ResolveSpec) -> Result<Self, LatticeError> {
        self.apply(&Step::ResolvePoint(spec.clone()))
    }

    pub fn contract(&self, names: &[&str]) -> Result<Self, LatticeError> {
        self.apply(&Step::Contract(names.iter().map(|s| (*s).to_string()).collect()))
    }

    /// On a smooth model every irreducible tracked curve has integral genus ≥ 0.
    fn validate(&self) -> Result<(), LatticeError> {
        if !self.is_smooth() {
            return Ok(());
        }
        for c in self.tracked.iter().filter(|c| c.irreducible) {
            if !is_nonneg_integer(&c.pa) {
                return Err(LatticeError::BadGenus { name: c.name.clone(), pa: fmt_rat(&c.pa) });
            }
        }
        Ok(())
    }

    fn check_fresh(&self, name: &str) -> Result<(), LatticeError> {
        if self.tracked.iter().any(|c| c.name == name) {
            return Err(LatticeError::DuplicateName(name.to_string()));
        }
        Ok(())
    }

    fn push_curve(
        &mut self,
        name: String,
        cls: DivisorClass,
        irreducible: bool,
        kind: CurveKind,
    ) -> Result<(), LatticeError> {
        self.check_fresh(&name)?;
        let pa = self.adjunction_pa(&cls)?;
        self.tracked.push(TrackedCurve { name, cls, pa, irreducible, kind });
        Ok(())
    }
}
