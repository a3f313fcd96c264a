//! The structural moves: constructors, resolution of a point, double
//! covers and contractions. Each one is a [`Step`] so a model's history can
//! be replayed exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{Signed, Zero};

use super::{pair_key, DivisorClass, IntersectionLattice, LatticeError, SingularPoint, SurfaceModel, TrackedCurve};
use crate::graphs::{
    classify_minimally_elliptic, fundamental_cycle, is_negative_definite, match_catalog, Component, ConfigSpec,
    Contact, CurveConfiguration, CurveKind, Ellipticity,
};
use crate::rational::{as_i64, bilinear, fmt_rat, frac, from_ints, int, solve, zeros, Matrix, Rat};

/// A curve given by integer coefficients over a declared basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtraCurve {
    pub name: String,
    pub terms: Vec<(String, i64)>,
    pub irreducible: bool,
    pub kind: CurveKind,
}

/// A smooth model whose lattice is spanned by a configuration of curves;
/// K is solved from adjunction on every component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeclareSpec {
    pub config: ConfigSpec,
    pub chi: i64,
    pub extra: Vec<ExtraCurve>,
}

/// Intersection of a tracked curve's strict transform with an exceptional curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Meet {
    pub curve: String,
    pub exceptional: String,
    pub mult: i64,
    pub points: u32,
}

/// Replaces a point (singular or smooth) by an exceptional configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolveSpec {
    pub point: String,
    pub exceptional: ConfigSpec,
    pub meets: Vec<Meet>,
    pub concurrent: Vec<Vec<String>>,
}

/// A non-branch curve whose preimage splits into two components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSpec {
    pub curve: String,
    pub parts: (String, String),
    pub part_self_int: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSpec {
    /// Coefficients of L with branch divisor in |2L|.
    pub half_branch: Vec<Rat>,
    /// Branch curve -> name of its reduced preimage.
    pub branch: Vec<(String, String)>,
    /// Non-branch curve -> name of its (irreducible) preimage.
    pub renames: Vec<(String, String)>,
    pub splits: Vec<SplitSpec>,
    pub singular_points: Vec<SingularPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    MakeP2,
    MakeHirzebruch(i64),
    Declare(DeclareSpec),
    AddCurve { name: String, coeffs: Vec<Rat>, irreducible: bool, kind: CurveKind },
    AnnotateContact { a: String, b: String, points: u32 },
    AnnotateConcurrent(Vec<String>),
    AnnotateKind { curve: String, kind: CurveKind },
    ResolvePoint(ResolveSpec),
    DoubleCover(CoverSpec),
    Contract(Vec<String>),
}

/// Result of a point blow-up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowUp {
    pub model: SurfaceModel,
    pub exceptional: String,
    pub strict: BTreeMap<String, DivisorClass>,
}

impl BlowUp {
    /// σ*D for a class on the surface before the blow-up.
    pub fn pullback(&self, d: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        let rank = self.model.lattice.rank();
        if d.coeffs.len() + 1 != rank || d.lattice.basis() != &self.model.lattice.basis()[..rank - 1] {
            return Err(LatticeError::LatticeMismatch);
        }
        Ok(pad(d, &self.model.lattice))
    }
}

fn pad(d: &DivisorClass, lattice: &Arc<IntersectionLattice>) -> DivisorClass {
    let mut coeffs = d.coeffs.clone();
    coeffs.resize(lattice.rank(), Rat::zero());
    DivisorClass { lattice: Arc::clone(lattice), coeffs }
}

pub(super) fn construct(step: &Step) -> Result<SurfaceModel, LatticeError> {
    let log = vec![step.clone()];
    match step {
        Step::MakeP2 => {
            let lattice = Arc::new(IntersectionLattice::new(vec!["H".into()], from_ints(&[&[1]]))?);
            SurfaceModel::from_parts(lattice, vec![int(-3)], &int(1), log)
        }
        Step::MakeHirzebruch(n) => {
            if *n < 0 {
                return Err(LatticeError::NegativeIndex(*n));
            }
            let lattice = Arc::new(IntersectionLattice::new(
                vec!["Cinf".into(), "Gamma".into()],
                from_ints(&[&[-n, 1], &[1, 0]]),
            )?);
            SurfaceModel::from_parts(lattice, vec![int(-2), int(-(n + 2))], &int(1), log)
        }
        Step::Declare(spec) => declare(spec, log),
        _ => Err(LatticeError::BadLog),
    }
}

fn declare(spec: &DeclareSpec, log: Vec<Step>) -> Result<SurfaceModel, LatticeError> {
    let config = CurveConfiguration::from_spec(&spec.config)?;
    let names: Vec<String> = config.components().iter().map(|c| c.name.clone()).collect();
    let gram = config.gram_rat();
    let k = solve(&gram, &config.k_vector().into_iter().map(int).collect::<Vec<_>>()).ok_or(LatticeError::Singular)?;
    let lattice = Arc::new(IntersectionLattice::new(names, gram)?);
    let mut model = SurfaceModel::from_parts(Arc::clone(&lattice), k, &int(spec.chi), log)?;
    for (i, c) in config.components().iter().enumerate() {
        model.push_curve(c.name.clone(), DivisorClass::basis_element(&lattice, i), true, c.kind)?;
    }
    copy_annotations(&mut model, &config);
    for extra in &spec.extra {
        let terms: Vec<(&str, i64)> = extra.terms.iter().map(|(n, c)| (n.as_str(), *c)).collect();
        let cls = model.class_from_terms(&terms)?;
        model.push_curve(extra.name.clone(), cls, extra.irreducible, extra.kind)?;
    }
    model.validate()?;
    Ok(model)
}

fn copy_annotations(model: &mut SurfaceModel, config: &CurveConfiguration) {
    let name = |i: usize| config.components()[i].name.clone();
    for c in config.contacts() {
        model.contact_points.insert(pair_key(&name(c.i), &name(c.j)), c.points);
    }
    for set in config.concurrent() {
        model.concurrent.push(set.iter().map(|&i| name(i)).collect());
    }
}

pub(super) fn apply(model: &SurfaceModel, step: &Step) -> Result<SurfaceModel, LatticeError> {
    match step {
        Step::MakeP2 | Step::MakeHirzebruch(_) | Step::Declare(_) => Err(LatticeError::BadLog),
        Step::AddCurve { name, coeffs, irreducible, kind } => {
            let mut next = model.clone();
            let cls = DivisorClass::new(&model.lattice, coeffs.clone())?;
            next.push_curve(name.clone(), cls, *irreducible, *kind)?;
            Ok(next)
        }
        Step::AnnotateContact { a, b, points } => {
            model.curve(a)?;
            model.curve(b)?;
            let mut next = model.clone();
            next.contact_points.insert(pair_key(a, b), *points);
            Ok(next)
        }
        Step::AnnotateConcurrent(names) => {
            for n in names {
                model.curve(n)?;
            }
            let mut next = model.clone();
            next.concurrent.push(names.iter().cloned().collect());
            Ok(next)
        }
        Step::AnnotateKind { curve, kind } => {
            model.curve(curve)?;
            let mut next = model.clone();
            for c in next.tracked.iter_mut().filter(|c| &c.name == curve) {
                c.kind = *kind;
            }
            Ok(next)
        }
        Step::ResolvePoint(spec) => resolve_point(model, spec),
        Step::DoubleCover(spec) => double_cover(model, spec),
        Step::Contract(names) => contract(model, names),
    }
}

fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.len(), b.len());
    let mut out = zeros(n + m, n + m);
    for i in 0..n {
        out[i][..n].clone_from_slice(&a[i]);
    }
    for j in 0..m {
        out[n + j][n..].clone_from_slice(&b[j]);
    }
    out
}

fn resolve_point(model: &SurfaceModel, spec: &ResolveSpec) -> Result<SurfaceModel, LatticeError> {
    let config = CurveConfiguration::from_spec(&spec.exceptional)?;
    let chi_shift = match classify_minimally_elliptic(&config)? {
        Ellipticity::MinimallyElliptic { .. } => -1,
        Ellipticity::Rational => 0,
        Ellipticity::NotElliptic => return Err(LatticeError::UnsupportedPoint),
    };
    let exc_names: Vec<String> = config.components().iter().map(|c| c.name.clone()).collect();
    for name in &exc_names {
        model.check_fresh(name)?;
        if model.lattice.index_of(name).is_some() {
            return Err(LatticeError::DuplicateName(name.clone()));
        }
    }
    let exc_index = |name: &str| {
        exc_names.iter().position(|n| n == name).ok_or_else(|| LatticeError::UnknownCurve(name.to_string()))
    };
    let mut v: BTreeMap<&str, Vec<Rat>> = BTreeMap::new();
    for meet in &spec.meets {
        model.curve(&meet.curve)?;
        let j = exc_index(&meet.exceptional)?;
        v.entry(meet.curve.as_str()).or_insert_with(|| vec![Rat::zero(); exc_names.len()])[j] += int(meet.mult);
    }

    let m = config.gram_rat();
    let n = model.lattice.rank();
    let mut basis = model.lattice.basis().to_vec();
    basis.extend(exc_names.iter().cloned());
    let lattice = Arc::new(IntersectionLattice::new(basis, block_diag(model.lattice.gram(), &m))?);
    let extend = |d: &DivisorClass, tail: &[Rat]| {
        let mut c = pad(d, &lattice);
        for (j, t) in tail.iter().enumerate() {
            c.coeffs[n + j] += t;
        }
        c
    };

    let k_exc: Vec<Rat> = config.k_vector().into_iter().map(int).collect();
    let c = solve(&m, &k_exc).ok_or(LatticeError::Singular)?;
    let canonical = extend(&model.canonical, &c);

    let mut next = SurfaceModel {
        lattice: Arc::clone(&lattice),
        canonical,
        chi: model.chi + chi_shift,
        tracked: Vec::new(),
        singular_points: model.singular_points.iter().filter(|p| p.label != spec.point).cloned().collect(),
        contact_points: model.contact_points.clone(),
        concurrent: model.concurrent.clone(),
        provenance: Vec::new(),
    };
    for curve in &model.tracked {
        let cls = match v.get(curve.name.as_str()) {
            Some(vals) => {
                let neg: Vec<Rat> = vals.iter().map(|x| -x).collect();
                let a = solve(&m, &neg).ok_or(LatticeError::Singular)?;
                extend(&curve.cls, &a.iter().map(|x| -x).collect::<Vec<_>>())
            }
            None => pad(&curve.cls, &lattice),
        };
        let pa = next.adjunction_pa(&cls)?;
        next.tracked.push(TrackedCurve { cls, pa, ..curve.clone() });
    }
    for (j, comp) in config.components().iter().enumerate() {
        next.push_curve(comp.name.clone(), DivisorClass::basis_element(&lattice, n + j), true, comp.kind)?;
    }
    copy_annotations(&mut next, &config);
    for meet in &spec.meets {
        next.contact_points.insert(pair_key(&meet.curve, &meet.exceptional), meet.points);
    }
    for set in &spec.concurrent {
        for name in set {
            next.curve(name)?;
        }
        next.concurrent.push(set.iter().cloned().collect());
    }
    Ok(next)
}

pub(super) fn blow_up(
    model: &SurfaceModel,
    exceptional: &str,
    center: &BTreeMap<String, i64>,
) -> Result<BlowUp, LatticeError> {
    let mut meets = Vec::new();
    for (curve, &mult) in center {
        model.curve(curve)?;
        if mult < 0 {
            return Err(LatticeError::NonIntegralConfig(format!("multiplicity {mult} on {curve}")));
        }
        if mult > 0 {
            let points = u32::try_from(mult).map_err(|_| LatticeError::NonIntegralConfig(mult.to_string()))?;
            meets.push(Meet { curve: curve.clone(), exceptional: exceptional.to_string(), mult, points });
        }
    }
    let spec = ResolveSpec {
        point: exceptional.to_string(),
        exceptional: ConfigSpec {
            components: vec![Component::new(exceptional, -1, 0)],
            contacts: Vec::new(),
            concurrent: Vec::new(),
        },
        meets,
        concurrent: Vec::new(),
    };
    let next = model.resolve_point(&spec)?;
    for name in center.keys() {
        let c = next.curve(name)?;
        if c.irreducible && c.pa.is_negative() {
            return Err(LatticeError::BadGenus { name: name.clone(), pa: fmt_rat(&c.pa) });
        }
    }
    let strict = center
        .keys()
        .map(|name| Ok((name.clone(), next.class(name)?)))
        .collect::<Result<BTreeMap<_, _>, LatticeError>>()?;
    Ok(BlowUp { model: next, exceptional: exceptional.to_string(), strict })
}

fn double_cover(model: &SurfaceModel, spec: &CoverSpec) -> Result<SurfaceModel, LatticeError> {
    let n = model.lattice.rank();
    let l = DivisorClass::new(&model.lattice, spec.half_branch.clone())?;
    let mut branch_sum = DivisorClass::zero(&model.lattice);
    for (name, _) in &spec.branch {
        branch_sum = &branch_sum + &model.curve(name)?.cls;
    }
    let slack = &(2 * &l) - &branch_sum;
    if slack.coeffs.iter().any(Signed::is_negative) {
        return Err(LatticeError::BranchExceeds);
    }
    let k_plus_l = &model.canonical + &l;
    let chi = int(2 * model.chi) + l.dot(&k_plus_l)? * frac(1, 2);

    let mut basis: Vec<String> = model.lattice.basis().iter().map(|b| format!("θ*{b}")).collect();
    let mut gram: Matrix = model.lattice.gram().iter().map(|r| r.iter().map(|v| v * int(2)).collect()).collect();
    let mut split_norms = Vec::new();
    for split in &spec.splits {
        let c = model.curve(&split.curve)?;
        let w_sq = &split.part_self_int - c.cls.square() * frac(1, 2);
        if w_sq.is_zero() {
            return Err(LatticeError::Singular);
        }
        basis.push(format!("w[{}]", split.curve));
        split_norms.push(vec![w_sq]);
    }
    for norm in &split_norms {
        gram = block_diag(&gram, &vec![norm.clone()]);
    }
    let lattice = Arc::new(IntersectionLattice::new(basis, gram)?);

    let mut canonical_coeffs = k_plus_l.coeffs.clone();
    canonical_coeffs.resize(lattice.rank(), Rat::zero());
    let mut next = SurfaceModel::from_parts(Arc::clone(&lattice), canonical_coeffs, &chi, Vec::new())?;
    next.singular_points = spec.singular_points.clone();

    let half = frac(1, 2);
    for (from, to) in &spec.branch {
        let c = model.curve(from)?;
        next.push_curve(to.clone(), &half * &pad(&c.cls, &lattice), c.irreducible, c.kind)?;
    }
    for (from, to) in &spec.renames {
        let c = model.curve(from)?;
        next.push_curve(to.clone(), pad(&c.cls, &lattice), c.irreducible, c.kind)?;
    }
    for (t, split) in spec.splits.iter().enumerate() {
        let c = model.curve(&split.curve)?;
        let half_pull = &half * &pad(&c.cls, &lattice);
        let w = DivisorClass::basis_element(&lattice, n + t);
        next.push_curve(split.parts.0.clone(), &half_pull + &w, true, CurveKind::Smooth)?;
        next.push_curve(split.parts.1.clone(), &half_pull - &w, true, CurveKind::Smooth)?;
    }
    Ok(next)
}

impl SurfaceModel {
    /// The configuration formed by the named tracked curves.
    pub fn configuration(&self, names: &[&str]) -> Result<CurveConfiguration, LatticeError> {
        let curves = names.iter().map(|n| self.curve(n)).collect::<Result<Vec<_>, _>>()?;
        let integral = |q: Rat, what: &str| as_i64(&q).ok_or_else(|| LatticeError::NonIntegralConfig(what.to_string()));
        let mut components = Vec::new();
        for c in &curves {
            let self_int = integral(c.cls.square(), &format!("{}²", c.name))?;
            let pa = integral(c.pa.clone(), &format!("p_a({})", c.name))?;
            components.push(Component { name: c.name.clone(), self_int, pa, kind: c.kind });
        }
        let mut contacts = Vec::new();
        for i in 0..curves.len() {
            for j in i + 1..curves.len() {
                let mult =
                    integral(curves[i].cls.dot(&curves[j].cls)?, &format!("{}·{}", curves[i].name, curves[j].name))?;
                if mult < 0 {
                    return Err(LatticeError::NonIntegralConfig(format!("{}·{} < 0", curves[i].name, curves[j].name)));
                }
                if mult > 0 {
                    let points = self
                        .contact_points(&curves[i].name, &curves[j].name)
                        .unwrap_or_else(|| u32::try_from(mult).unwrap_or(1));
                    contacts.push(Contact { i, j, mult, points });
                }
            }
        }
        let index = |n: &String| names.iter().position(|m| m == n);
        let concurrent =
            self.concurrent.iter().filter_map(|set| set.iter().map(index).collect::<Option<Vec<_>>>()).collect();
        Ok(CurveConfiguration::new(components, contacts, concurrent)?)
    }
}

fn contract(model: &SurfaceModel, names: &[String]) -> Result<SurfaceModel, LatticeError> {
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let config = model.configuration(&refs)?;
    if !config.is_connected() {
        return Err(LatticeError::NotConnected);
    }
    if !is_negative_definite(&config) {
        return Err(LatticeError::NotNegativeDefinite);
    }
    let e_classes: Vec<DivisorClass> = refs.iter().map(|n| model.class(n)).collect::<Result<_, _>>()?;
    let m = config.gram_rat();

    let project = |d: &DivisorClass| -> Result<(Vec<Rat>, Vec<Rat>), LatticeError> {
        let pairings = e_classes.iter().map(|e| d.dot(e).map(|x| -x)).collect::<Result<Vec<_>, _>>()?;
        let s = solve(&m, &pairings).ok_or(LatticeError::Singular)?;
        let mut c = d.coeffs.clone();
        for (sj, e) in s.iter().zip(&e_classes) {
            for (ci, ei) in c.iter_mut().zip(&e.coeffs) {
                *ci += sj * ei;
            }
        }
        Ok((c, s))
    };

    let (k_proj, r) = project(&model.canonical)?;
    let smooth_blowdown = config.len() == 1 && config.components()[0].self_int == -1 && config.components()[0].pa == 0;
    let mut chi = model.chi;
    let mut singular_points = model.singular_points.clone();
    if !smooth_blowdown {
        if !r.iter().all(Rat::is_integer) {
            return Err(LatticeError::NonGorenstein(format!(
                "discrepancy coefficients {}",
                r.iter().map(fmt_rat).collect::<Vec<_>>().join(",")
            )));
        }
        let kind = match classify_minimally_elliptic(&config)? {
            Ellipticity::MinimallyElliptic { degree } => {
                let z = fundamental_cycle(&config)?;
                if r.iter().zip(&z.coeffs).any(|(a, b)| *a != int(*b)) {
                    return Err(LatticeError::NonGorenstein(
                        "canonical cycle differs from the fundamental cycle".into(),
                    ));
                }
                chi += 1;
                format!("minimally-elliptic:{degree}")
            }
            Ellipticity::Rational => "rational".to_string(),
            Ellipticity::NotElliptic => return Err(LatticeError::UnsupportedPoint),
        };
        let label = match_catalog(&config).map_or(kind, |e| e.label.clone());
        singular_points.push(SingularPoint { label: names.join("+"), kind: label });
    }

    let contracted: BTreeSet<&str> = refs.iter().copied().collect();
    let survivors: Vec<&TrackedCurve> =
        model.tracked.iter().filter(|c| !contracted.contains(c.name.as_str())).collect();
    let k_pull = DivisorClass { lattice: Arc::clone(&model.lattice), coeffs: k_proj.clone() };
    let mut classes = vec![k_proj];
    for c in &survivors {
        if !k_pull.dot(&c.cls)?.is_integer() {
            return Err(LatticeError::NonGorenstein(format!("K·{} is not an integer", c.name)));
        }
        classes.push(project(&c.cls)?.0);
    }

    let n = model.lattice.rank();
    let basis_proj = (0..n)
        .map(|a| project(&DivisorClass::basis_element(&model.lattice, a)).map(|p| p.0))
        .collect::<Result<Vec<_>, _>>()?;
    let mut gram: Matrix = (0..n)
        .map(|a| (0..n).map(|b| bilinear(model.lattice.gram(), &basis_proj[a], &basis_proj[b])).collect())
        .collect();
    let mut basis = model.lattice.basis().to_vec();
    let mut kernel: Vec<Vec<Rat>> = e_classes.iter().map(|e| e.coeffs.clone()).collect();

    while let Some(k) = kernel.pop() {
        let Some(p) = k.iter().rposition(|x| !x.is_zero()) else {
            continue;
        };
        let eliminate = |c: &mut Vec<Rat>| {
            let factor = &c[p] / &k[p];
            if !factor.is_zero() {
                for (ci, ki) in c.iter_mut().zip(&k) {
                    *ci -= &factor * ki;
                }
            }
            c.remove(p);
        };
        classes.iter_mut().for_each(eliminate);
        kernel.iter_mut().for_each(eliminate);
        gram.remove(p);
        for row in &mut gram {
            row.remove(p);
        }
        basis.remove(p);
    }

    let lattice = Arc::new(IntersectionLattice::new(basis, gram)?);
    let mut classes = classes.into_iter();
    let canonical = DivisorClass { lattice: Arc::clone(&lattice), coeffs: classes.next().unwrap_or_default() };
    let mut next = SurfaceModel {
        lattice: Arc::clone(&lattice),
        canonical,
        chi,
        tracked: Vec::new(),
        singular_points,
        contact_points: model
            .contact_points
            .iter()
            .filter(|((a, b), _)| !contracted.contains(a.as_str()) && !contracted.contains(b.as_str()))
            .map(|(k, v)| (k.clone(), *v))
            .collect(),
        concurrent: model
            .concurrent
            .iter()
            .filter(|set| set.iter().all(|s| !contracted.contains(s.as_str())))
            .cloned()
            .collect(),
        provenance: Vec::new(),
    };
    for (curve, coeffs) in survivors.into_iter().zip(classes) {
        let cls = DivisorClass { lattice: Arc::clone(&lattice), coeffs };
        let pa = next.adjunction_pa(&cls)?;
        next.tracked.push(TrackedCurve { cls, pa, ..curve.clone() });
    }
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn center(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
        pairs.iter().map(|(n, m)| ((*n).to_string(), *m)).collect()
    }

    fn p2_with_cubic(kind: CurveKind) -> SurfaceModel {
        let p2 = SurfaceModel::make_p2();
        let cubic = p2.class_from_terms(&[("H", 3)]).unwrap();
        p2.add_curve("C", &cubic, true, kind).unwrap()
    }

    #[test]
    fn nodal_cubic_through_its_node() {
        let s = p2_with_cubic(CurveKind::Nodal);
        let b = s.blow_up("G", &center(&[("C", 2)])).unwrap();
        let c = b.model.curve("C").unwrap();
        assert_eq!(c.pa, int(0));
        assert_eq!(c.cls.square(), int(5));
        assert_eq!(c.cls.to_string(), "3H-2G");
        assert_eq!(b.model.k_squared(), int(8));
        assert_eq!(b.model.c2(), s.c2() + int(1));
    }

    #[test]
    fn too_high_multiplicity_is_rejected() {
        let s = p2_with_cubic(CurveKind::Smooth);
        assert!(matches!(s.blow_up("G", &center(&[("C", 3)])), Err(LatticeError::BadGenus { .. })));
        assert!(s.blow_up("G", &center(&[("nope", 1)])).is_err());
    }

    #[test]
    fn pullback_is_orthogonal_to_exceptional() {
        let s = p2_with_cubic(CurveKind::Smooth);
        let b = s.blow_up("G", &center(&[("C", 1)])).unwrap();
        let h = b.pullback(&s.class_from_terms(&[("H", 1)]).unwrap()).unwrap();
        let g = b.model.class("G").unwrap();
        assert_eq!(h.dot(&g).unwrap(), int(0));
    }

    #[test]
    fn blow_down_round_trip() {
        let f1 = SurfaceModel::make_hirzebruch(1).unwrap();
        let s = f1.add_curve("fibre", &f1.class_from_terms(&[("Gamma", 1)]).unwrap(), true, CurveKind::Smooth).unwrap();
        let b = s.blow_up("G", &center(&[("fibre", 1)])).unwrap();
        let back = b.model.contract(&["G"]).unwrap();
        assert_eq!(back.lattice().gram(), s.lattice().gram());
        assert_eq!(back.canonical().coeffs(), s.canonical().coeffs());
        assert_eq!(back.chi(), s.chi());
        assert_eq!(back.curve("fibre").unwrap().cls.coeffs(), s.curve("fibre").unwrap().cls.coeffs());
    }

    #[test]
    fn k3_double_plane() {
        let p2 = SurfaceModel::make_p2();
        let sextic =
            p2.add_curve("Delta", &p2.class_from_terms(&[("H", 6)]).unwrap(), true, CurveKind::Smooth).unwrap();
        let cover = sextic
            .double_cover(&CoverSpec {
                half_branch: vec![int(3)],
                branch: vec![("Delta".into(), "R".into())],
                renames: vec![],
                splits: vec![],
                singular_points: vec![],
            })
            .unwrap();
        assert!(cover.canonical().is_zero());
        assert_eq!(cover.chi(), 2);
        assert_eq!(cover.curve("R").unwrap().cls.square(), int(18));
    }

    #[test]
    fn branch_larger_than_2l_is_rejected() {
        let p2 = SurfaceModel::make_p2();
        let big = p2.add_curve("D", &p2.class_from_terms(&[("H", 8)]).unwrap(), true, CurveKind::Smooth).unwrap();
        let err = big.double_cover(&CoverSpec {
            half_branch: vec![int(3)],
            branch: vec![("D".into(), "R".into())],
            renames: vec![],
            splits: vec![],
            singular_points: vec![],
        });
        assert_eq!(err, Err(LatticeError::BranchExceeds));
    }

    #[test]
    fn split_preimage_numbers() {
        let f1 = SurfaceModel::make_hirzebruch(1).unwrap();
        let s = f1.add_curve("Gq", &f1.class_from_terms(&[("Gamma", 1)]).unwrap(), true, CurveKind::Smooth).unwrap();
        let cover = s
            .double_cover(&CoverSpec {
                half_branch: vec![int(2), int(4)],
                branch: vec![],
                renames: vec![],
                splits: vec![SplitSpec {
                    curve: "Gq".into(),
                    parts: ("E2".into(), "E3".into()),
                    part_self_int: frac(-3, 2),
                }],
                singular_points: vec![SingularPoint { label: "q".into(), kind: "A1".into() }],
            })
            .unwrap();
        let e2 = cover.class("E2").unwrap();
        let e3 = cover.class("E3").unwrap();
        assert_eq!(e2.square(), frac(-3, 2));
        assert_eq!(e2.dot(&e3).unwrap(), frac(3, 2));
    }

    #[test]
    fn a1_contraction_is_crepant() {
        let spec = DeclareSpec {
            config: ConfigSpec {
                components: vec![Component::new("N", -2, 0), Component::new("G", -1, 0)],
                contacts: vec![crate::graphs::ContactSpec { a: "N".into(), b: "G".into(), mult: 1, points: 1 }],
                concurrent: vec![],
            },
            chi: 1,
            extra: vec![],
        };
        let x = SurfaceModel::replay(&[Step::Declare(spec)]).unwrap();
        let w = x.contract(&["N"]).unwrap();
        assert_eq!(w.k_squared(), x.k_squared());
        assert_eq!(w.chi(), x.chi());
        assert_eq!(w.singular_points()[0].kind, "A1");
    }

    #[test]
    fn replay_reproduces_model() {
        let s = p2_with_cubic(CurveKind::Nodal);
        let b = s.blow_up("G", &center(&[("C", 2)])).unwrap().model;
        let w = b.contract(&["G"]).unwrap();
        assert_eq!(SurfaceModel::replay(w.provenance()).unwrap(), w);
        assert_eq!(SurfaceModel::replay(&[]), Err(LatticeError::BadLog));
        assert_eq!(SurfaceModel::replay(&[Step::Contract(vec![])]), Err(LatticeError::BadLog));
    }
}
