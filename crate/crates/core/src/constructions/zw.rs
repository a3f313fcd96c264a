//! Z/W types: X carries E and a (−1)-curve G with E·G = 2. Blowing down G
//! gives a K3 surface S; contracting the (−2)-components of E gives S̄,
//! a double plane branched over a sextic. Contracting E instead gives W.

use num_traits::Zero;

use super::{ConstructionError, PipelineResult, PipelineSpec, SingularityType};
use crate::check::Checklist;
use crate::curves::families;
use crate::graphs::{fundamental_cycle, isomorphic, match_catalog, Component, ContactSpec, CurveKind};
use crate::lattice::{CoverSpec, DeclareSpec, DivisorClass, ExtraCurve, Step, SurfaceModel};
use crate::rational::{as_i64, int};
use crate::value::Value;

/// G·Eᵢ for each component of the catalog graph.
fn g_contacts(ty: SingularityType) -> &'static [i64] {
    match ty {
        SingularityType::Z11 => &[2],
        SingularityType::Z12 => &[2, 0],
        SingularityType::Z13 => &[2, 0, 0],
        SingularityType::W12 => &[1, 1],
        SingularityType::W13 => &[1, 0, 1],
        _ => &[],
    }
}

fn sum_class(model: &SurfaceModel, names: &[String]) -> Result<DivisorClass, ConstructionError> {
    names.iter().try_fold(DivisorClass::zero(model.lattice()), |acc, n| Ok(&acc + &model.class(n)?))
}

fn is_numerically_trivial(d: &DivisorClass) -> bool {
    let n = d.lattice().rank();
    (0..n).all(|i| d.dot(&DivisorClass::basis_element(d.lattice(), i)).is_ok_and(|v| v.is_zero()))
}

/// Riemann–Hurwitz cross-check on the double plane: ℙ² with L = 3H.
fn double_plane() -> Result<(bool, i64), ConstructionError> {
    let p2 = SurfaceModel::make_p2();
    let sextic = p2.add_curve("Delta", &p2.class_from_terms(&[("H", 6)])?, true, CurveKind::Other)?;
    let cover = sextic.double_cover(&CoverSpec {
        half_branch: vec![int(3)],
        branch: Vec::new(),
        renames: Vec::new(),
        splits: Vec::new(),
        singular_points: Vec::new(),
    })?;
    let h = cover.class_from_terms(&[("θ*H", 1)])?;
    let l_sq = as_i64(&h.square()).unwrap_or(0);
    Ok((cover.canonical().is_zero() && cover.chi() == 2, l_sq))
}

pub fn run_zw_pipeline(spec: &PipelineSpec) -> Result<PipelineResult, ConstructionError> {
    let ty = spec.ty;
    if ty.is_e_type() {
        return Err(ConstructionError::WrongPipeline(ty));
    }
    let context = spec.context();
    let mut list = Checklist::new(&context);
    let mut models = Vec::new();

    let declared_spec = spec.declared_exceptional();
    let e_names: Vec<String> = declared_spec.components.iter().map(|c| c.name.clone()).collect();
    let mut x_spec = declared_spec.clone();
    x_spec.components.push(Component::new("G", -1, 0));
    for (name, &mult) in e_names.iter().zip(g_contacts(ty)) {
        if mult > 0 {
            let points = u32::try_from(mult).unwrap_or(1);
            x_spec.contacts.push(ContactSpec { a: name.clone(), b: "G".into(), mult, points });
        }
    }
    let x = SurfaceModel::replay(&[Step::Declare(DeclareSpec {
        config: x_spec,
        chi: 2,
        extra: vec![ExtraCurve {
            name: "Ehat".into(),
            terms: e_names.iter().map(|n| (n.clone(), 1)).collect(),
            irreducible: false,
            kind: CurveKind::Other,
        }],
    })])?;
    models.push(("X".to_string(), x.clone()));

    let e = sum_class(&x, &e_names)?;
    let g = x.class("G")?;
    list.check("KX_equiv_G", true, x.canonical().numerically_equal(&g)?, "K_X is the (−1)-curve G");
    list.check("KX_sq", -1, x.k_squared(), "K_X² = −1");
    list.check("E_sq", -2, e.square(), "E² = −2");
    list.check("K_dot_E", 2, x.intersect(x.canonical(), &e)?, "K_X·E = 2");
    list.check("E_dot_G", 2, x.intersect(&e, &g)?, "E·G = 2");
    let refs: Vec<&str> = e_names.iter().map(String::as_str).collect();
    let constructed = x.configuration(&refs)?;
    let hit = match_catalog(&constructed).map_or_else(|| "none".to_string(), |c| c.label.clone());
    list.check("catalog", ty.label(), hit, "exceptional unimodal dual graph");
    list.check(
        "exceptional_matches_construction",
        true,
        isomorphic(&constructed, &ty.catalog_entry().config),
        "declared dual graph equals the catalog graph",
    );
    let z = fundamental_cycle(&constructed)?;
    list.check("Z_sq", -2, z.z_sq, "fundamental cycle of degree two");
    list.check("pa_Z", 1, z.pa, "p_a(E) = 1");

    // Blow down G: the K3 surface S.
    let s = x.contract(&["G"])?;
    models.push(("S".to_string(), s.clone()));
    let ehat = s.class("Ehat")?;
    list.check("KS_trivial", true, is_numerically_trivial(s.canonical()), "K_S = 0");
    list.check("chi_S", 2, s.chi(), "S is a K3 surface");
    list.check("Ehat_sq", 2, ehat.square(), "Ê² = 2");
    list.check("pa_Ehat", 2, s.adjunction_pa(&ehat)?, "p_a(Ê) = 2");
    list.check("chi_Ehat", 3, s.rr_chi(&ehat)?, "h⁰(𝒪_S(Ê)) = 3");

    // Contract the (−2)-components disjoint from G: S̄.
    let chain: Vec<String> = e_names
        .iter()
        .zip(g_contacts(ty))
        .filter(|(n, &mult)| mult == 0 && constructed.components().iter().any(|c| &c.name == *n && c.self_int == -2))
        .map(|(n, _)| n.clone())
        .collect();
    let orthogonal = chain
        .iter()
        .map(|n| s.class(n).and_then(|c| s.intersect(&ehat, &c)))
        .collect::<Result<Vec<_>, _>>()?
        .iter()
        .all(Zero::is_zero);
    list.check("Ehat_orthogonal_to_chain", true, orthogonal, "Ê misses the contracted (−2)-curves");
    let sbar = if chain.is_empty() {
        s.clone()
    } else {
        let refs: Vec<&str> = chain.iter().map(String::as_str).collect();
        s.contract(&refs)?
    };
    let expected_point = match ty {
        SingularityType::Z12 | SingularityType::W13 => "A1",
        SingularityType::Z13 => "A2",
        _ => "none",
    };
    let point = sbar.singular_points().first().map_or("none", |p| p.kind.as_str());
    list.check("Sbar_point", expected_point, point, "singular point of the double plane");
    let ebar = sbar.class("Ehat")?;
    let pa_ebar = sbar.adjunction_pa(&ebar)?;
    list.check("deg_delta", 6, int(2) * pa_ebar - int(2) + int(4), "Riemann–Hurwitz: deg δ = 2p_a(Ē) − 2 + 4");
    let (plane_ok, l_sq) = double_plane()?;
    list.check("double_plane_K3", true, plane_ok, "double plane branched over a sextic is K3");
    list.check("double_plane_L_sq", 2, l_sq, "(ψ*L)² = 2 for the pulled-back line");
    models.push(("Sbar".to_string(), sbar));

    // Contract E: the surface W.
    let w = x.contract(&refs)?;
    models.push(("W".to_string(), w.clone()));
    list.check("KW_sq", 1, w.k_squared(), "K_W² = 1");
    list.check("chi_W", 3, w.chi(), "χ(W) = 3");
    list.check("KW_nakai", "ample", w.nakai_check(w.canonical())?.as_str(), "K_W is ample");
    list.check("chi_drop", true, x.chi() == w.chi() - 1, "χ(X) = χ(W) − 1");
    list.check("pullback_KW_sq", 1, (x.canonical() + &e).square(), "(K_X + E)² = 1");

    if let Some(sel) = &spec.family {
        let report = families::verify_family(&sel.row, sel.variant.as_deref(), spec.seed)?;
        if !sel.row.starts_with(ty.label()) {
            return Err(ConstructionError::Family(families::FamilyError::UnknownRow(sel.row.clone())));
        }
        list.check("family_pattern", true, report.pattern_ok, "restriction to z = 0");
        if let Some(mark) = &report.expected_mark {
            list.check("family_mark", mark.as_str(), report.mark.clone(), "A-type at p1");
        } else {
            list.record("family_mark", report.mark.clone());
        }
        list.check("count", report.stated_count, report.count, "dim |Δ| − dim Aut(ℙ²)");
        list.record("family_variant", Value::from(report.variant.clone()));
    }

    Ok(PipelineResult { context, checklist: list, models })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::Status;
    use crate::graphs::CurveConfiguration;

    #[test]
    fn every_type_passes() {
        for ty in [
            SingularityType::Z11,
            SingularityType::Z12,
            SingularityType::Z13,
            SingularityType::W12,
            SingularityType::W13,
        ] {
            let r = run_zw_pipeline(&PipelineSpec::new(ty)).unwrap();
            assert!(r.checklist.all_passed(), "{ty}: {:#?}", r.checklist.failures());
            assert_eq!(r.checklist.value("deg_delta"), Some(&Value::from(6)));
        }
    }

    #[test]
    fn w13_family_and_z13_flag() {
        let r = run_zw_pipeline(&PipelineSpec::new(SingularityType::W13).with_family("W13", None)).unwrap();
        assert!(r.checklist.all_passed(), "{:#?}", r.checklist.failures());
        assert_eq!(r.checklist.value("count"), Some(&Value::from(16)));
        let r = run_zw_pipeline(&PipelineSpec::new(SingularityType::Z13).with_family("Z13-2", Some("stated"))).unwrap();
        let count = r.checks().iter().find(|c| c.name == "count").unwrap();
        assert_eq!(count.status, Status::Flagged);
    }

    #[test]
    fn configuration_is_consistent() {
        let config = CurveConfiguration::from_spec(&SingularityType::Z12.catalog_entry().spec()).unwrap();
        assert_eq!(config.len(), g_contacts(SingularityType::Z12).len());
    }
}
