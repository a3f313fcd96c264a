use unimodal::curves::families::{find_row, rows, verify_family};
use unimodal::curves::{
    an_type_at, detect_33_germ, linear_system_dim, mult_tree, restrict_to_line, splitting_invariants, AnType,
    ConditionSystem, HomogeneousForm, Line, Poly, ProjPoint, ThreeThree,
};

fn germ(text: &str) -> Poly {
    Poly::parse(text, &["y", "z"]).unwrap()
}

#[test]
fn restrictions_to_the_line_at_infinity() {
    let z0 = Line::from_ints(0, 0, 1);
    let p1 = ProjPoint::from_ints(1, 0, 0);
    let f = HomogeneousForm::parse("y^3*(3*x-y)^2*(x-y) + z*(x^4*y + z^5)").unwrap();
    let marks = [p1.clone(), ProjPoint::from_ints(1, 3, 0), ProjPoint::from_ints(1, 1, 0)];
    let r = restrict_to_line(&f, &z0, &marks).unwrap();
    assert_eq!((r.orders, r.residual_degree), (vec![3, 2, 1], 0));

    let w12 = HomogeneousForm::parse("y^6 + z*(x^5 + y^4*z)").unwrap();
    let r = restrict_to_line(&w12, &z0, std::slice::from_ref(&p1)).unwrap();
    assert_eq!((r.orders, r.residual_degree), (vec![6], 0));

    let generic = HomogeneousForm::parse("x^6 + 2*y^6 - x^3*y^3 + x*y^5 + z^6").unwrap();
    let r = restrict_to_line(&generic, &z0, &[]).unwrap();
    assert_eq!(r.residual_degree, 6);

    let contains = HomogeneousForm::parse("z*(x^5 + y^5)").unwrap();
    assert!(restrict_to_line(&contains, &z0, &[]).is_err());
}

#[test]
fn multiplicity_sequences() {
    let t236 = mult_tree(&germ("y^3 + y^2*z^2 + z^6"), 6);
    assert_eq!(&t236.sequence()[..2], &[3, 3]);
    let ordinary = mult_tree(&germ("y^3 + z^3"), 4).sequence();
    assert_eq!(ordinary[0], 3);
    assert!(ordinary[1..].iter().all(|&m| m < 2), "{ordinary:?}");
    let a4 = mult_tree(&germ("y^2 + z^5"), 8);
    assert_eq!(&a4.sequence()[..3], &[2, 2, 1]);
    assert_eq!(a4.delta(), Some(2));
    let off = mult_tree(&germ("1 + y"), 3);
    assert_eq!(off.sequence(), vec![0]);
}

#[test]
fn three_three_points() {
    assert_eq!(detect_33_germ(&germ("y^3 + y^2*z^2 + z^6")), ThreeThree::Yes { n: Some(6) });
    assert_eq!(detect_33_germ(&germ("y^3 + y^2*z^2 + z^7")), ThreeThree::Yes { n: Some(7) });
    assert_eq!(detect_33_germ(&germ("y^3 + z^3")), ThreeThree::No);
    assert_eq!(detect_33_germ(&germ("y^2 + z^3")), ThreeThree::No);
}

#[test]
fn splitting_of_a_three_three_point() {
    // Δ′ = (y − z²)² + z¹⁰ is A9, Δ″ = y, and the whole germ is T2,3,12.
    let first = HomogeneousForm::parse("(x*y - z^2)^2*x^6 + z^10").unwrap();
    let second = HomogeneousForm::parse("y").unwrap();
    let p = ProjPoint::from_ints(1, 0, 0);
    let s = splitting_invariants(first.poly(), second.poly(), &p);
    assert_eq!(s.intersection, Some(4));
    assert_eq!(s.first_type, AnType::A(9));
    let whole = HomogeneousForm::new(first.poly() * second.poly()).unwrap();
    assert_eq!(unimodal::curves::detect_33_point(&whole, &p), ThreeThree::Yes { n: Some(12) });
}

#[test]
fn a_types_in_the_plane() {
    let cusp = HomogeneousForm::parse("y^2*z - x^3").unwrap();
    assert_eq!(an_type_at(&cusp, &ProjPoint::from_ints(0, 0, 1)), AnType::A(2));
    assert_eq!(an_type_at(&cusp, &ProjPoint::from_ints(0, 1, 0)), AnType::Smooth);
    assert_eq!(an_type_at(&cusp, &ProjPoint::from_ints(1, 2, 1)), AnType::NotOnCurve);
    let w13 = HomogeneousForm::parse("y^4*x^2 + z*(x^4*y + z^5 + y^5)").unwrap();
    assert_eq!(an_type_at(&w13, &ProjPoint::from_ints(1, 0, 0)), AnType::A(1));
    let node = Poly::parse("x*y", &["x", "y"]).unwrap();
    assert_eq!(unimodal::curves::milnor_number(&node), Some(1));
}

#[test]
fn linear_systems() {
    let p = ProjPoint::from_ints(1, 0, 0);
    assert_eq!(linear_system_dim(&ConditionSystem::new(6).with_multiplicity(&p, 3)), 21);
    assert_eq!(linear_system_dim(&ConditionSystem::new(5).with_multiplicity(&p, 1)), 19);
    assert_eq!(linear_system_dim(&ConditionSystem::new(5).without_monomial([5, 0, 0])), 19);
    let empty = (0..=5u32)
        .flat_map(|i| (0..=5 - i).map(move |j| [i, j, 5 - i - j]))
        .fold(ConditionSystem::new(5), |s, e| s.without_monomial(e));
    assert_eq!(linear_system_dim(&empty), -1);
}

#[test]
fn sampled_family_members_have_the_declared_shape() {
    for row in rows() {
        for seed in [0, 5] {
            let report = verify_family(row.label, Some(row.variant), seed).unwrap();
            assert!(report.pattern_ok, "{} {}", row.label, row.variant);
            if let Some(mark) = row.mark {
                assert_eq!(report.mark, mark, "{} {}", row.label, row.variant);
            }
        }
    }
    assert!(find_row("Z14", None).is_err());
    assert!(find_row("Z13-2", Some("other")).is_err());
}
