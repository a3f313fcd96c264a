//! Linear systems of plane curves cut out by linear conditions, and the
//! dimension count dim(family) − dim(stabilizer of the markings).

use num_traits::{One, Zero};

use super::echelon::sparse_rank;
use super::form::{dehomogenize, CurveError, Line, ProjPoint, Projectivity};
use super::germ::{blow_up, Direction};
use super::poly::Poly;
use crate::rational::Rat;

/// Exponents of the degree-`d` monomials in x, y, z, x-heavy first.
#[must_use]
pub fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

fn mono_poly(e: [u32; 3]) -> Poly {
    Poly::monomial(3, e.to_vec(), Rat::one())
}

/// Linear functionals on the space of degree-d forms, one row per
/// condition, indexed like [`monomials`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionSystem {
    degree: u32,
    rows: Vec<(String, Vec<Rat>)>,
}

impl ConditionSystem {
    #[must_use]
    pub fn new(degree: u32) -> Self {
        Self { degree, rows: Vec::new() }
    }

    #[must_use]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[must_use]
    pub fn rows(&self) -> &[(String, Vec<Rat>)] {
        &self.rows
    }

    fn push_coefficients(&mut self, label: &str, images: &[Poly], wanted: impl Fn(&[u32]) -> bool) {
        let mut keys: Vec<Vec<u32>> =
            images.iter().flat_map(|p| p.terms().keys().cloned()).filter(|e| wanted(e)).collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            let row = images.iter().map(|p| p.coeff(&k)).collect();
            self.rows.push((format!("{label}:{k:?}"), row));
        }
    }

    /// F has multiplicity ≥ `m` at `p`.
    #[must_use]
    pub fn with_multiplicity(mut self, p: &ProjPoint, m: u32) -> Self {
        let images: Vec<Poly> = monomials(self.degree).into_iter().map(|e| dehomogenize(&mono_poly(e), p)).collect();
        self.push_coefficients(&format!("mult{m}@{p}"), &images, |e| e.iter().sum::<u32>() < m);
        self
    }

    /// The line is a component of F.
    #[must_use]
    pub fn with_line_component(mut self, l: &Line) -> Self {
        let (p, q) = l.basis();
        let subs: Vec<Poly> =
            (0..3).map(|i| &Poly::var(2, 0).scale(&p.coords()[i]) + &Poly::var(2, 1).scale(&q.coords()[i])).collect();
        let images: Vec<Poly> = monomials(self.degree).into_iter().map(|e| mono_poly(e).compose(&subs)).collect();
        self.push_coefficients(&format!("line{l}"), &images, |_| true);
        self
    }

    /// F|ℓ vanishes to order ≥ `k` at the point `p` of ℓ.
    pub fn with_line_order(mut self, l: &Line, p: &ProjPoint, k: u32) -> Result<Self, CurveError> {
        if !l.contains(p) {
            return Err(CurveError::PointOffLine { point: p.to_string() });
        }
        let (a, b) = l.basis();
        let q = if &a == p { b } else { a };
        let subs: Vec<Poly> = (0..3)
            .map(|i| &Poly::constant(1, p.coords()[i].clone()) + &Poly::var(1, 0).scale(&q.coords()[i]))
            .collect();
        let images: Vec<Poly> = monomials(self.degree).into_iter().map(|e| mono_poly(e).compose(&subs)).collect();
        self.push_coefficients(&format!("order{k}@{p}on{l}"), &images, |e| e[0] < k);
        Ok(self)
    }

    /// The coefficient of x^i y^j z^k vanishes.
    #[must_use]
    pub fn without_monomial(mut self, e: [u32; 3]) -> Self {
        let row = monomials(self.degree).into_iter().map(|m| if m == e { Rat::one() } else { Rat::zero() }).collect();
        self.rows.push((format!("no{e:?}"), row));
        self
    }

    /// Given multiplicity `base` at `p`, the strict transform has
    /// multiplicity ≥ `m` at the infinitely near point in direction `d`.
    #[must_use]
    pub fn with_infinitely_near(mut self, p: &ProjPoint, d: &Direction, base: u32, m: u32) -> Self {
        let images: Vec<Poly> = monomials(self.degree)
            .into_iter()
            .map(|e| {
                let local = dehomogenize(&mono_poly(e), p);
                let low = local.truncate(base);
                blow_up(&(&local - &low), d, base)
            })
            .collect();
        self.push_coefficients(&format!("near{m}@{p}"), &images, |e| e.iter().sum::<u32>() < m);
        self
    }

    /// Conditions on forms G defined by φ(G∘g): the system whose members
    /// are the images g(C) of members C of `self`.
    #[must_use]
    pub fn transported(&self, g: &Projectivity) -> Self {
        let subs: Vec<Poly> = g
            .matrix()
            .iter()
            .map(|row| row.iter().enumerate().fold(Poly::zero(3), |acc, (j, c)| &acc + &Poly::var(3, j).scale(c)))
            .collect();
        let mons = monomials(self.degree);
        // ψ(M) = φ(M∘g)
        let images: Vec<Poly> = mons.iter().map(|&e| mono_poly(e).compose(&subs)).collect();
        let rows = self
            .rows
            .iter()
            .map(|(label, phi)| {
                let row = images
                    .iter()
                    .map(|img| mons.iter().zip(phi).fold(Rat::zero(), |acc, (&e, c)| acc + c * img.coeff(&e)))
                    .collect();
                (label.clone(), row)
            })
            .collect();
        Self { degree: self.degree, rows }
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<Rat>> = self.rows.iter().map(|(_, r)| r.clone()).collect();
        sparse_rank(&rows)
    }
}

/// Projective dimension of the system; −1 when it is empty.
#[must_use]
pub fn linear_system_dim(system: &ConditionSystem) -> i64 {
    let d = i64::from(system.degree);
    (d + 1) * (d + 2) / 2 - system.rank() as i64 - 1
}

/// Data the automorphisms of ℙ² must preserve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Marking {
    Point(ProjPoint),
    Line(Line),
}

impl Marking {
    #[must_use]
    pub fn transported(&self, g: &Projectivity) -> Self {
        match self {
            Self::Point(p) => Self::Point(g.apply(p)),
            Self::Line(l) => Self::Line(g.apply_line(l)),
        }
    }
}

/// Linear constraints on A ∈ 𝔤𝔩₃ (entries a_ij at 3i + j) saying that the
/// infinitesimal projectivity fixes each marking, plus trace A = 0.
#[must_use]
pub fn stabilizer_constraints(markings: &[Marking]) -> Vec<Vec<Rat>> {
    let mut rows = vec![(0..9).map(|k| if k % 4 == 0 { Rat::one() } else { Rat::zero() }).collect::<Vec<_>>()];
    for m in markings {
        // v(A) is a 3-vector linear in A; require v(A) × c = 0.
        let (c, lin): ([Rat; 3], [Vec<Rat>; 3]) = match m {
            Marking::Point(p) => {
                let c = p.coords().clone();
                // (Ap)_k = Σ_j a_kj p_j
                let lin = std::array::from_fn(|k| {
                    (0..9).map(|idx| if idx / 3 == k { c[idx % 3].clone() } else { Rat::zero() }).collect()
                });
                (c, lin)
            }
            Marking::Line(l) => {
                let c = l.coeffs().clone();
                // (ℓA)_j = Σ_i ℓ_i a_ij
                let lin = std::array::from_fn(|j| {
                    (0..9).map(|idx| if idx % 3 == j { c[idx / 3].clone() } else { Rat::zero() }).collect()
                });
                (c, lin)
            }
        };
        for (a, b) in [(1, 2), (2, 0), (0, 1)] {
            rows.push(lin[a].iter().zip(&lin[b]).map(|(x, y)| x * &c[b] - y * &c[a]).collect());
        }
    }
    rows
}

/// dim of the subgroup of PGL₃ preserving every marking.
#[must_use]
pub fn stabilizer_dim(markings: &[Marking]) -> i64 {
    9 - sparse_rank(&stabilizer_constraints(markings)) as i64
}

/// A family of plane curves: members of a linear system, extra continuous
/// parameters (such as a cross-ratio), and markings fixed by normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub system: ConditionSystem,
    pub params: u32,
    pub markings: Vec<Marking>,
}

impl Family {
    #[must_use]
    pub fn transported(&self, g: &Projectivity) -> Self {
        Self {
            system: self.system.transported(g),
            params: self.params,
            markings: self.markings.iter().map(|m| m.transported(g)).collect(),
        }
    }
}

/// (dim of the affine coefficient space) + parameters − dim stabilizer.
pub fn orbit_dim_count(family: &Family) -> Result<i64, CurveError> {
    let lsd = linear_system_dim(&family.system);
    if lsd < 0 {
        return Err(CurveError::EmptyFamily);
    }
    Ok(lsd + 1 + i64::from(family.params) - stabilizer_dim(&family.markings))
}
