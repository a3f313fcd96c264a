//! One pass/fail line per acceptance criterion.

mod common;

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use common::{compare_laufer, minor_rank};
use unimodal::check::{Check, Status};
use unimodal::constructions::{branch_class_for, run_pipeline, PipelineResult, PipelineSpec, SingularityType};
use unimodal::curves::families::find_row;
use unimodal::curves::{
    an_type_of_germ, detect_33_germ, detect_33_point, stabilizer_constraints, stabilizer_dim, AnType, HomogeneousForm,
    Line, Marking, Poly, ProjPoint, ThreeThree,
};
use unimodal::graphs::catalog::{catalog, recompute};
use unimodal::graphs::FiberType;
use unimodal::lattice::SurfaceModel;
use unimodal::report::Report;
use unimodal::runner::{corpus_files, run_file};
use unimodal::value::Value;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(ty: SingularityType, fiber: Option<FiberType>) -> Result<PipelineResult, String> {
    let mut spec = PipelineSpec::new(ty);
    spec.fiber = fiber;
    run_pipeline(&spec).map_err(|e| e.to_string())
}

fn check<'a>(r: &'a PipelineResult, name: &str) -> Result<&'a Check, String> {
    r.checks().iter().find(|c| c.name == name).ok_or_else(|| format!("{}: no check {name}", r.context))
}

fn value(r: &PipelineResult, name: &str) -> Result<Value, String> {
    r.checklist.value(name).cloned().ok_or_else(|| format!("{}: no value {name}", r.context))
}

fn e_runs() -> Vec<(SingularityType, Option<FiberType>)> {
    let mut runs = vec![(SingularityType::E12, None)];
    for ty in [SingularityType::E13, SingularityType::E14] {
        runs.extend(ty.allowed_fibers().iter().map(|&f| (ty, Some(f))));
    }
    runs
}

fn catalog_invariants() -> Outcome {
    for e in catalog().iter().filter(|e| e.is_exceptional()) {
        let want = if e.label.starts_with('E') { (-1, 1, 1) } else { (-2, 2, 1) };
        let got = recompute(e);
        ensure(got == want, || format!("{}: {got:?}", e.label))?;
    }
    Ok(())
}

fn branch_classes() -> Outcome {
    let classes = [
        branch_class_for(&SurfaceModel::make_hirzebruch(0).unwrap()),
        branch_class_for(&SurfaceModel::make_hirzebruch(1).unwrap()),
        branch_class_for(&SurfaceModel::make_p2()),
    ];
    let shown: Vec<String> =
        classes.iter().map(|c| c.as_ref().map_or_else(|e| e.to_string(), ToString::to_string)).collect();
    ensure(shown == ["4Cinf+6Gamma", "4Cinf+8Gamma", "6H"], || format!("{shown:?}"))
}

fn e_runs_reach_w() -> Outcome {
    let runs = e_runs();
    ensure(runs.len() == 7, || format!("{} runs", runs.len()))?;
    for (ty, fiber) in runs {
        let r = run(ty, fiber)?;
        ensure(r.checklist.all_passed(), || format!("{}: {:?}", r.context, r.checklist.failures()))?;
        let got = (value(&r, "KW_sq")?, value(&r, "chi_W")?, value(&r, "KW_nakai")?);
        ensure(got == (Value::from(1), Value::from(3), Value::from("ample")), || format!("{}: {got:?}", r.context))?;
    }
    Ok(())
}

fn mhat_values() -> Outcome {
    for (ty, fiber) in e_runs() {
        let r = run(ty, fiber)?;
        let c = check(&r, "mhat")?;
        let want = if ty == SingularityType::E12 {
            (Value::ints(&[0, 2, 4, 8]), Status::Pass)
        } else {
            (Value::ints(&[0, 2, 2, 6]), Status::Flagged)
        };
        ensure((c.computed.clone(), c.status) == want, || format!("{}: {:?} {:?}", r.context, c.computed, c.status))?;
    }
    Ok(())
}

fn k_section_zero() -> Outcome {
    for (ty, fiber) in [(SingularityType::E12, None), (SingularityType::E13, Some(FiberType::I(2)))] {
        let r = run(ty, fiber)?;
        let k = value(&r, "k_section")?;
        ensure(k == Value::from(0), || format!("{}: k = {k}", r.context))?;
    }
    Ok(())
}

fn zw_double_planes() -> Outcome {
    for ty in
        [SingularityType::Z11, SingularityType::Z12, SingularityType::Z13, SingularityType::W12, SingularityType::W13]
    {
        let r = run(ty, None)?;
        ensure(r.checklist.all_passed(), || format!("{}: {:?}", r.context, r.checklist.failures()))?;
        let got: Vec<Value> =
            ["Ehat_sq", "pa_Ehat", "chi_Ehat", "deg_delta"].iter().map(|n| value(&r, n)).collect::<Result<_, _>>()?;
        ensure(got == [2, 2, 3, 6].map(Value::from), || format!("{}: {got:?}", r.context))?;
    }
    Ok(())
}

fn dimension_counts() -> Outcome {
    let table = [
        ("Z11-1", None, 18),
        ("Z11-2", None, 17),
        ("Z11-3", None, 17),
        ("W12-1", None, 17),
        ("W12-2", None, 16),
        ("Z12-1", None, 17),
        ("Z12-2", None, 16),
        ("Z13-1", None, 16),
        ("Z13-2", Some("x4y-excluded"), 15),
        ("W13", None, 16),
    ];
    for (label, variant, want) in table {
        let row = find_row(label, variant).map_err(|e| e.to_string())?;
        let got = row.count().map_err(|e| e.to_string())?;
        ensure(got == want, || format!("{label}: {got}"))?;
    }
    let stated = find_row("Z13-2", Some("stated")).map_err(|e| e.to_string())?;
    let got = stated.count().map_err(|e| e.to_string())?;
    let c = Check::evaluate("Z13/Z13-2/stated", "count", Value::from(stated.stated_count), Value::from(got), "");
    ensure((got, c.status) == (16, Status::Flagged), || format!("Z13-2 stated: {got} {:?}", c.status))
}

fn stabilizers() -> Outcome {
    let p = |x, y, z| Marking::Point(ProjPoint::from_ints(x, y, z));
    let cases = [
        (vec![p(1, 0, 0), p(0, 1, 0)], 4),
        (vec![p(1, 0, 0), Marking::Line(Line::from_ints(0, 0, 1))], 5),
        (vec![p(1, 0, 0), p(0, 1, 0), p(0, 0, 1), p(1, 1, 1)], 0),
    ];
    for (markings, want) in cases {
        let engine = stabilizer_dim(&markings);
        let oracle = 9 - minor_rank(&stabilizer_constraints(&markings)) as i64;
        ensure(engine == want && oracle == want, || format!("engine {engine}, oracle {oracle}, want {want}"))?;
    }
    Ok(())
}

fn laufer_oracle() -> Outcome {
    let start = Instant::now();
    let n = compare_laufer(29, 200)?;
    let took = start.elapsed();
    ensure(n >= 200 && took.as_secs() < 10, || format!("{n} cases in {took:?}"))
}

fn plane_germs() -> Outcome {
    let cases = [
        ("y^3 + y^2*z^2 + z^6", ThreeThree::Yes { n: Some(6) }),
        ("y^3 + y^2*z^2 + z^7", ThreeThree::Yes { n: Some(7) }),
        ("y^3 + z^3", ThreeThree::No),
    ];
    for (text, want) in cases {
        let f = Poly::parse(text, &["y", "z"]).map_err(|e| e.to_string())?;
        let got = detect_33_germ(&f);
        ensure(got == want, || format!("{text}: {got:?}"))?;
    }
    // The same sextic germ placed at [1:0:0] of the plane.
    let sextic = HomogeneousForm::parse("x^3*y^3 + x^2*y^2*z^2 + z^6").map_err(|e| e.to_string())?;
    let got = detect_33_point(&sextic, &ProjPoint::from_ints(1, 0, 0));
    ensure(got == ThreeThree::Yes { n: Some(6) }, || format!("projective sextic: {got:?}"))?;
    for n in 1..=6 {
        let f = Poly::parse(&format!("y^2 + x^{}", n + 1), &["x", "y"]).map_err(|e| e.to_string())?;
        let got = an_type_of_germ(&f);
        ensure(got == AnType::A(n), || format!("n = {n}: {got}"))?;
    }
    Ok(())
}

fn corpus_report() -> Result<Report, String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let files = corpus_files(&dir).map_err(|e| e.to_string())?;
    Ok(Report::new(files.iter().map(|f| run_file(f)).collect()))
}

fn noether_flag() -> Outcome {
    let r = run(SingularityType::E14, Some(FiberType::I(4)))?;
    let c2 = value(&r, "c2_X")?;
    ensure(c2 == Value::from(24), || format!("c2 = {c2}"))?;
    let stated = Check::evaluate(&r.context, "c2_X", Value::from(23), c2, "");
    ensure(stated.status == Status::Flagged, || format!("{:?}", stated.status))?;
    let report = corpus_report()?;
    let flagged =
        report.scenarios.iter().flat_map(|s| &s.records).any(|r| r.name == "c2_X" && r.status == Status::Flagged);
    ensure(flagged && report.exit_code == 0, || format!("corpus exit {}, c2 flag {flagged}", report.exit_code))
}

fn determinism() -> Outcome {
    let (a, b) = (corpus_report()?.to_json(), corpus_report()?.to_json());
    ensure(a == b, || "corpus reports differ between runs".into())?;
    let back = Report::from_json(&a).map_err(|e| e.to_string())?;
    ensure(back.to_json() == a, || "report does not round-trip".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("catalog invariants", catalog_invariants),
        ("branch classes", branch_classes),
        ("E runs reach K_W^2 = 1, chi = 3, ample", e_runs_reach_w),
        ("M-hat diagnostics", mhat_values),
        ("k = 0 on both geometries", k_section_zero),
        ("Z/W double planes", zw_double_planes),
        ("dimension counts", dimension_counts),
        ("stabilizer dimensions", stabilizers),
        ("Laufer against exhaustive search", laufer_oracle),
        ("[3,3] detection and A_n types", plane_germs),
        ("Noether flag", noether_flag),
        ("deterministic corpus reports", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(()) => println!("acceptance {:>2} pass  {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("acceptance {:>2} FAIL  {name}: {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
