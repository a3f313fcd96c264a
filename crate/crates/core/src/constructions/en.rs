//! E-types: double cover of 𝔽ₙ branched over Γ_p + Δ′, resolve the
//! T2,3,n point and the A-point on the second singular fibre, blow down the
//! preimage of Γ_p to reach the elliptic surface X, then contract E to W.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{branch_class_for, ConstructionError, PipelineResult, PipelineSpec, SingularityType};
use crate::check::Checklist;
use crate::graphs::{
    euler_budget, fundamental_cycle, isomorphic, match_catalog, recognize_kodaira_fiber, Component, ConfigSpec,
    ContactSpec, CurveConfiguration, CurveKind, FiberType,
};
use crate::lattice::{CoverSpec, Meet, ResolveSpec, SingularPoint, SplitSpec, SurfaceModel};
use crate::rational::{as_i64, frac, int, Rat};
use crate::value::Value;

/// Declared invariants of W carried through the run.
const PG_W: i64 = 2;
const Q_W: i64 = 0;

/// Shape of the A-point q′ on the second singular fibre for one variant.
struct FibrePoint {
    chain: usize,
    /// (curve, exceptional, mult, points)
    meets: Vec<(&'static str, &'static str, i64, u32)>,
    concurrent: Vec<Vec<&'static str>>,
}

fn fibre_point(ty: SingularityType, fiber: FiberType) -> Option<FibrePoint> {
    let point = |chain, meets, concurrent| Some(FibrePoint { chain, meets, concurrent });
    match (ty, fiber) {
        (SingularityType::E13, FiberType::I(2)) => point(1, vec![("E2", "N1", 2, 2)], vec![]),
        (SingularityType::E13, FiberType::III) => point(1, vec![("E2", "N1", 2, 1)], vec![]),
        (SingularityType::E13, FiberType::I(3)) => point(2, vec![("E2", "N1", 1, 1), ("E2", "N2", 1, 1)], vec![]),
        (SingularityType::E13, FiberType::IV) => {
            point(2, vec![("E2", "N1", 1, 1), ("E2", "N2", 1, 1)], vec![vec!["E2", "N1", "N2"]])
        }
        (SingularityType::E14, FiberType::I(3)) => point(1, vec![("E2", "N1", 1, 1), ("E3", "N1", 1, 1)], vec![]),
        (SingularityType::E14, FiberType::I(4)) => point(2, vec![("E2", "N1", 1, 1), ("E3", "N2", 1, 1)], vec![]),
        _ => None,
    }
}

fn a_chain_spec(len: usize) -> ConfigSpec {
    let components = (1..=len).map(|k| Component::new(&format!("N{k}"), -2, 0)).collect();
    let contacts =
        (1..len).map(|k| ContactSpec { a: format!("N{k}"), b: format!("N{}", k + 1), mult: 1, points: 1 }).collect();
    ConfigSpec { components, contacts, concurrent: Vec::new() }
}

fn validate(spec: &PipelineSpec) -> Result<Option<FibrePoint>, ConstructionError> {
    if !spec.ty.is_e_type() {
        return Err(ConstructionError::WrongPipeline(spec.ty));
    }
    if !matches!(spec.t_index, 6 | 7) {
        return Err(ConstructionError::UnsupportedTIndex(spec.t_index));
    }
    let illegal = |f: String| ConstructionError::IllegalFiber { ty: spec.ty, fiber: f };
    match (spec.ty, spec.fiber) {
        (SingularityType::E12, None) => Ok(None),
        (SingularityType::E12, Some(f)) => Err(illegal(f.to_string())),
        (_, None) => Err(illegal("none".into())),
        (ty, Some(f)) => fibre_point(ty, f).map(Some).ok_or_else(|| illegal(f.to_string())),
    }
}

/// Arithmetic genus of E1 on X: 1 for E12, 0 otherwise.
fn pa_e1(ty: SingularityType) -> i64 {
    i64::from(ty == SingularityType::E12)
}

/// Solves (C∞ + kΓ)·Γ = (C∞ + kΓ)·K_P + (2p_a(E1) + 4)/2 on 𝔽_{1−p_a(E1)}.
pub fn k_section(pa: i64) -> Result<Rat, ConstructionError> {
    let p = SurfaceModel::make_hirzebruch(1 - pa)?;
    let cinf = p.class_from_terms(&[("Cinf", 1)])?;
    let gamma = p.class_from_terms(&[("Gamma", 1)])?;
    let shift = frac(2 * pa + 4, 2);
    // lhs − rhs is affine in k: a + b·k.
    let residual = |d: &crate::lattice::DivisorClass| -> Result<Rat, ConstructionError> {
        Ok(p.intersect(d, &gamma)? - p.intersect(d, p.canonical())? - &shift)
    };
    let a = residual(&cinf)?;
    let b = residual(&(&cinf + &gamma))? - &a;
    if b.is_zero() {
        return Err(ConstructionError::Lattice(crate::lattice::LatticeError::Singular));
    }
    Ok(-a / b)
}

pub fn run_en_pipeline(spec: &PipelineSpec) -> Result<PipelineResult, ConstructionError> {
    let fibre_pt = validate(spec)?;
    let ty = spec.ty;
    let context = spec.context();
    let mut list = Checklist::new(&context);
    let mut models = Vec::new();

    // Base 𝔽ₙ with the curves that matter.
    let p = SurfaceModel::make_hirzebruch(1 - pa_e1(ty))?;
    let gamma = p.class_from_terms(&[("Gamma", 1)])?;
    let l = &gamma - p.canonical();
    let branch = branch_class_for(&p)?;
    let mut base = p
        .add_curve("Cinf", &p.class_from_terms(&[("Cinf", 1)])?, true, CurveKind::Smooth)?
        .add_curve("Gamma_p", &gamma, true, CurveKind::Smooth)?
        .add_curve("Delta'", &(&branch - &gamma), true, CurveKind::Other)?
        .add_curve("fibre", &gamma, true, CurveKind::Smooth)?;
    if fibre_pt.is_some() {
        base = base.add_curve("Gamma_q", &gamma, true, CurveKind::Smooth)?;
    }
    let branch_sum = &base.class("Gamma_p")? + &base.class("Delta'")?;
    list.record("branch_class", branch.to_string());
    list.check("branch_is_2L", true, branch_sum == 2 * &l, "branch divisor Γ_p + Δ′ in |2(Γ − K_P)|");
    models.push(("P".to_string(), base.clone()));

    // Double cover, singular at p (T2,3,n) and, for E13/E14, at q′.
    let t_kind = if spec.t_index == 6 { CurveKind::Smooth } else { CurveKind::Nodal };
    let mut cover = CoverSpec {
        half_branch: l.coeffs().to_vec(),
        branch: vec![("Gamma_p".into(), "G".into())],
        renames: vec![("Cinf".into(), "E1".into()), ("fibre".into(), "fibre".into())],
        splits: Vec::new(),
        singular_points: vec![SingularPoint { label: "p".into(), kind: format!("T2,3,{}", spec.t_index) }],
    };
    if let Some(fp) = &fibre_pt {
        let a_kind = format!("A{}", fp.chain);
        match ty {
            SingularityType::E13 => cover.renames.push(("Gamma_q".into(), "E2".into())),
            _ => cover.splits.push(SplitSpec {
                curve: "Gamma_q".into(),
                parts: ("E2".into(), "E3".into()),
                part_self_int: if fp.chain == 1 { frac(-3, 2) } else { frac(-4, 3) },
            }),
        }
        cover.singular_points.push(SingularPoint { label: "q'".into(), kind: a_kind });
    }
    let mut y = base.double_cover(&cover)?;
    list.record("chi_cover", y.chi());
    match ty {
        SingularityType::E13 => y = y.annotate_contact("E1", "E2", 1)?,
        SingularityType::E14 => y = y.annotate_concurrent(&["E1", "E2", "E3"])?,
        // For E12 the preimage of C∞ is the cuspidal curve of the catalog graph.
        _ => y = y.annotate_kind("E1", CurveKind::Cuspidal)?,
    }

    // Minimal resolution of p: one genus-one (−1)-curve.
    let resolve_p = ResolveSpec {
        point: "p".into(),
        exceptional: ConfigSpec {
            components: vec![Component::new("F", -1, 1).with_kind(t_kind)],
            contacts: Vec::new(),
            concurrent: Vec::new(),
        },
        meets: vec![
            Meet { curve: "E1".into(), exceptional: "F".into(), mult: 1, points: 1 },
            Meet { curve: "G".into(), exceptional: "F".into(), mult: 1, points: 1 },
        ],
        concurrent: Vec::new(),
    };
    let mut y = y.resolve_point(&resolve_p)?;
    if let Some(fp) = &fibre_pt {
        let resolve_q = ResolveSpec {
            point: "q'".into(),
            exceptional: a_chain_spec(fp.chain),
            meets: fp
                .meets
                .iter()
                .map(|&(c, e, mult, points)| Meet { curve: c.into(), exceptional: e.into(), mult, points })
                .collect(),
            concurrent: fp.concurrent.iter().map(|s| s.iter().map(|x| (*x).to_string()).collect()).collect(),
        };
        y = y.resolve_point(&resolve_q)?;
    }
    models.push(("Y".to_string(), y.clone()));

    // Blow down G: the elliptic surface X.
    let x = y.contract(&["G"])?;
    models.push(("X".to_string(), x.clone()));
    let f = x.class("F")?;
    let e1 = x.class("E1")?;
    list.check("KX_sq", 0, x.k_squared(), "canonical square of the elliptic surface");
    list.check("chi_X", 2, x.chi(), "χ(X) = χ(W) − 1");
    list.check("c2_X", 24, x.c2(), "Noether: c2 = 12χ − K²");
    list.check("KX_equiv_F", true, x.canonical().numerically_equal(&f)?, "K_X is the half fibre");
    list.check("fibre_equiv_2F", true, x.class("fibre")?.numerically_equal(&(2 * &f))?, "the fibre is twice F");
    list.check("F_dot_E1", 1, x.intersect(&f, &e1)?, "E1 is a bisection: 2F·E1 = 2");

    // Exceptional configuration on X against the declared one.
    let names: Vec<&str> = ["E1", "E2", "E3"].into_iter().take(ty.catalog_entry().config.len()).collect();
    let constructed = x.configuration(&names)?;
    let declared_spec = spec.declared_exceptional();
    let declared = CurveConfiguration::from_spec(&declared_spec)?;
    let k_dot_e1 = x.intersect(x.canonical(), &e1)?;
    let declared_e1 = declared_spec.components.iter().find(|c| c.name == "E1");
    let adjunction_ok = declared_e1.is_some_and(|c| {
        let pa = Rat::one() + (int(c.self_int) + &k_dot_e1) * frac(1, 2);
        as_i64(&pa).is_some_and(|v| v >= 0 && v == c.pa)
    });
    list.check("E1_adjunction_integral", true, adjunction_ok, "adjunction on E1 with the declared self-intersection");
    list.check(
        "exceptional_matches_construction",
        true,
        isomorphic(&declared, &constructed),
        "declared dual graph equals the constructed one",
    );
    let hit = match_catalog(&constructed).map_or_else(|| "none".to_string(), |e| e.label.clone());
    list.check("catalog", ty.label(), hit, "exceptional unimodal dual graph");
    let z = fundamental_cycle(&constructed)?;
    list.check("Z_sq", -1, z.z_sq, "E² = −1");
    list.check("K_dot_Z", 1, z.k_dot_z, "K_X·E = 1");
    list.check("pa_Z", 1, z.pa, "p_a(E) = 1");

    // Elliptic fibration bookkeeping.
    let multiple = recognize_kodaira_fiber(&x.configuration(&["F"])?);
    let expected_multiple = if spec.t_index == 6 { FiberType::I(0) } else { FiberType::I(1) };
    list.check(
        "multiple_fiber",
        expected_multiple.to_string(),
        multiple.map_or_else(|| "none".to_string(), |t| t.to_string()),
        "the multiple fibre 2F",
    );
    let mut required = Vec::new();
    if let (Some(fp), Some(declared_fiber)) = (&fibre_pt, spec.fiber) {
        let mut fibre_names: Vec<String> =
            ["E2", "E3"].iter().filter(|n| x.curve(n).is_ok()).map(|s| (*s).to_string()).collect();
        fibre_names.extend((1..=fp.chain).map(|k| format!("N{k}")));
        let refs: Vec<&str> = fibre_names.iter().map(String::as_str).collect();
        let recognized = recognize_kodaira_fiber(&x.configuration(&refs)?);
        list.check(
            "fiber",
            declared_fiber.to_string(),
            recognized.map_or_else(|| "none".to_string(), |t| t.to_string()),
            "second singular fibre",
        );
        required.push(declared_fiber);
    }
    let c2 = as_i64(&x.c2()).unwrap_or(-1);
    let budget = euler_budget(&required, c2, multiple.unwrap_or(expected_multiple));
    list.check("euler_feasible", true, budget.feasible, "room for the remaining singular fibres");
    list.record("euler_remainder", budget.remainder);

    // Contract E: the surface W.
    let w = x.contract(&names)?;
    models.push(("W".to_string(), w.clone()));
    list.check("KW_sq", 1, w.k_squared(), "K_W² = 1");
    list.check("chi_W", 3, w.chi(), "χ(W) = 3");
    list.check("KW_nakai", "ample", w.nakai_check(w.canonical())?.as_str(), "K_W is ample");
    list.check("chi_drop", true, x.chi() == w.chi() - 1, "χ(X) = χ(W) − 1");
    list.check("pg_minus_q", w.chi() - 1, PG_W - Q_W, "p_g − q = χ − 1 with p_g = 2, q = 0");
    let z_class =
        names.iter().zip(&z.coeffs).try_fold(crate::lattice::DivisorClass::zero(x.lattice()), |acc, (n, c)| {
            x.class(n).map(|cls| &acc + &(*c * &cls))
        })?;
    let pulled = x.canonical() + &z_class;
    list.check("halffiber_sq", 1, pulled.square(), "(F + E)² = 1");
    list.check("k_section", 0, k_section(pa_e1(ty))?, "section class C∞ + kΓ");

    // M̂ on the blow-up of X at a point of F off E1.
    let xhat = x.blow_up("Ghat", &BTreeMap::from([("F".to_string(), 1)]))?;
    let m = &xhat.model;
    let fhat = m.class("F")?;
    let fibre = m.class("fibre")?;
    let e1hat = m.class("E1")?;
    let mhat = &(&(2 * &fibre) + &e1hat) + &fhat;
    let values =
        vec![m.intersect(&mhat, &fhat)?, m.intersect(&mhat, &fibre)?, m.intersect(&mhat, &e1hat)?, mhat.square()];
    let mhat_value = Value::rats(&values);
    list.check("mhat", Value::ints(&[0, 2, 4, 8]), mhat_value, "M̂·F̂, M̂·fibre, M̂·Ê1, M̂²");
    list.record("K_dot_Mhat", m.intersect(m.canonical(), &mhat)?);
    list.record("chi_Mhat", m.rr_chi(&mhat)?);
    list.record("chi_Mhat_splitting", pa_e1(ty) + 5);
    models.push(("Xhat".to_string(), xhat.model.clone()));

    Ok(PipelineResult { context, checklist: list, models })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::Status;

    fn run(ty: SingularityType, fiber: Option<FiberType>, n: u32) -> PipelineResult {
        let mut spec = PipelineSpec::new(ty).with_t_index(n);
        spec.fiber = fiber;
        run_en_pipeline(&spec).unwrap()
    }

    #[test]
    fn e12_checklist_passes() {
        let r = run(SingularityType::E12, None, 6);
        assert!(r.checklist.all_passed(), "{:#?}", r.checklist.failures());
        assert_eq!(r.checklist.value("mhat"), Some(&Value::ints(&[0, 2, 4, 8])));
        assert_eq!(r.checklist.value("chi_Mhat"), Some(&Value::from(5)));
        assert_eq!(r.checklist.value("chi_Mhat_splitting"), Some(&Value::from(6)));
    }

    #[test]
    fn all_variants_reach_w() {
        let runs = [
            (SingularityType::E13, FiberType::I(2)),
            (SingularityType::E13, FiberType::I(3)),
            (SingularityType::E13, FiberType::III),
            (SingularityType::E13, FiberType::IV),
            (SingularityType::E14, FiberType::I(3)),
            (SingularityType::E14, FiberType::I(4)),
        ];
        for (ty, fiber) in runs {
            for n in [6, 7] {
                let r = run(ty, Some(fiber), n);
                assert!(r.checklist.all_passed(), "{}: {:#?}", r.context, r.checklist.failures());
                let flagged: Vec<_> = r.checks().iter().filter(|c| c.status == Status::Flagged).collect();
                assert_eq!(flagged.len(), 1);
                assert_eq!(flagged[0].computed, Value::ints(&[0, 2, 2, 6]));
            }
        }
    }

    #[test]
    fn e14_i4_budget() {
        let r = run(SingularityType::E14, Some(FiberType::I(4)), 7);
        assert_eq!(r.checklist.value("euler_remainder"), Some(&Value::from(19)));
    }

    #[test]
    fn illegal_variants() {
        let bad = PipelineSpec::new(SingularityType::E14).with_fiber(FiberType::III);
        assert!(matches!(run_en_pipeline(&bad), Err(ConstructionError::IllegalFiber { .. })));
        let bad = PipelineSpec::new(SingularityType::E12).with_fiber(FiberType::I(2));
        assert!(run_en_pipeline(&bad).is_err());
        let bad = PipelineSpec::new(SingularityType::E12).with_t_index(8);
        assert_eq!(run_en_pipeline(&bad), Err(ConstructionError::UnsupportedTIndex(8)));
    }

    #[test]
    fn k_is_zero_on_both_geometries() {
        assert_eq!(k_section(1).unwrap(), int(0));
        assert_eq!(k_section(0).unwrap(), int(0));
    }

    #[test]
    fn edited_e1_breaks_adjunction() {
        let mut declared = SingularityType::E12.catalog_entry().spec();
        declared.components[0].self_int = -2;
        let mut spec = PipelineSpec::new(SingularityType::E12);
        spec.exceptional = Some(declared);
        let r = run_en_pipeline(&spec).unwrap();
        let failed: Vec<_> = r.checklist.failures().iter().map(|c| c.name.clone()).collect();
        assert_eq!(failed, ["E1_adjunction_integral", "exceptional_matches_construction"]);
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            run(SingularityType::E13, Some(FiberType::IV), 7),
            run(SingularityType::E13, Some(FiberType::IV), 7)
        );
    }
}
