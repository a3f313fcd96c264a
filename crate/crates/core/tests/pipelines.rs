use std::path::{Path, PathBuf};

use unimodal::check::Status;
use unimodal::constructions::{run_pipeline, PipelineSpec, SingularityType};
use unimodal::graphs::FiberType;
use unimodal::lattice::SurfaceModel;
use unimodal::runner::{corpus_files, run_text, ABSENT};
use unimodal::scenario::Scenario;
use unimodal::value::Value;

fn corpus() -> Vec<PathBuf> {
    corpus_files(&Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")).unwrap()
}

fn scenario(kind: &str, payload: &str, expect: &str) -> String {
    format!(r#"{{"schema_version": "1", "name": "t", "kind": "{kind}", "payload": {payload}, "expect": {{{expect}}}}}"#)
}

#[test]
fn corpus_files_are_canonical() {
    let files = corpus();
    assert_eq!(files.len(), 27);
    for f in files {
        let text = std::fs::read_to_string(&f).unwrap();
        let parsed = Scenario::parse(&text).unwrap();
        assert_eq!(parsed.to_json(), text, "{}", f.display());
    }
}

#[test]
fn every_pipeline_model_replays_from_its_log() {
    let mut specs: Vec<PipelineSpec> = vec![PipelineSpec::new(SingularityType::E12).with_t_index(7)];
    for ty in SingularityType::ALL {
        match ty.allowed_fibers() {
            [] => specs.push(PipelineSpec::new(ty)),
            fibers => specs.extend(fibers.iter().map(|&f| PipelineSpec::new(ty).with_fiber(f))),
        }
    }
    for spec in specs {
        let r = run_pipeline(&spec).unwrap();
        assert!(r.checklist.all_passed(), "{}: {:?}", r.context, r.checklist.failures());
        for (name, model) in &r.models {
            assert_eq!(&SurfaceModel::replay(model.provenance()).unwrap(), model, "{} {name}", r.context);
        }
    }
}

#[test]
fn illegal_runs_are_malformed_input() {
    let e14_iii = scenario("pipeline", r#"{"runs": [{"type": "E14", "fiber": "III"}]}"#, "");
    assert_eq!(run_text("t", &e14_iii).exit_code, 2);
    let unknown = scenario("pipeline", r#"{"runs": [{"type": "E15"}]}"#, "");
    assert_eq!(run_text("t", &unknown).exit_code, 2);
    let no_runs = scenario("pipeline", r#"{"runs": []}"#, "");
    assert_eq!(run_text("t", &no_runs).exit_code, 2);
    let bad_row = scenario("dims-check", r#"{"row": "Z14-1"}"#, "");
    assert_eq!(run_text("t", &bad_row).exit_code, 2);
}

#[test]
fn missing_values_fail_explicitly() {
    let text = scenario("dims-check", r#"{"row": "W13"}"#, r#""volume": {"value": "3", "origin": "derived"}"#);
    let r = run_text("t", &text);
    assert_eq!(r.exit_code, 1);
    assert_eq!(r.records[0].computed, Value::from(ABSENT));
}

#[test]
fn declared_exceptional_curves_must_match_the_construction() {
    let exceptional = r#"{"components": [{"name": "E1", "self_int": "-2", "pa": "1", "kind": "cuspidal"}]}"#;
    let payload = format!(r#"{{"runs": [{{"type": "E12", "exceptional": {exceptional}}}]}}"#);
    let r = run_text("t", &scenario("pipeline", &payload, ""));
    assert_eq!(r.exit_code, 1);
    let failed: Vec<&str> = r.records.iter().filter(|x| x.status == Status::Fail).map(|x| x.name.as_str()).collect();
    assert!(failed.contains(&"E1_adjunction_integral"), "{failed:?}");
    assert!(failed.contains(&"exceptional_matches_construction"), "{failed:?}");
}

#[test]
fn multi_run_values_are_qualified_by_context() {
    let payload = r#"{"runs": [{"type": "E13", "fiber": "I2"}, {"type": "E13", "fiber": "I2", "t_index": "7"}]}"#;
    let expect = r#""E13/I2/n6:mhat": {"value": ["0", "2", "4", "8"], "origin": "stated"},
                    "E13/I2/n7:mhat": {"value": ["0", "2", "2", "6"], "origin": "derived"}"#;
    let r = run_text("t", &scenario("pipeline", payload, expect));
    let statuses: Vec<Status> = r.records.iter().map(|x| x.status).collect();
    assert_eq!(statuses, [Status::Flagged, Status::Pass]);
    assert_eq!(r.exit_code, 0);
}

#[test]
fn flags_need_the_documented_pair() {
    // A wrong expectation for c2 that is not the documented 23 still fails.
    let payload = r#"{"runs": [{"type": "E14", "fiber": "I4"}]}"#;
    let r = run_text("t", &scenario("pipeline", payload, r#""c2_X": {"value": "22", "origin": "stated"}"#));
    assert_eq!(r.records[0].status, Status::Fail);
    let spec = PipelineSpec::new(SingularityType::E13).with_fiber(FiberType::IV);
    let r = run_pipeline(&spec).unwrap();
    assert_eq!(r.checklist.value("c2_X"), Some(&Value::from(24)));
}

#[test]
fn plane_checks_report_local_invariants() {
    let payload = r#"{"form": "y*((x*y - z^2)^2*x^6 + z^10)", "point": "[1:0:0]",
                      "split": ["(x*y - z^2)^2*x^6 + z^10", "y"],
                      "line": "[0:0:1]", "marked": ["[1:0:0]"]}"#;
    let expect = r#""three_three": {"value": "T2,3,12", "origin": "derived"},
                    "split_intersection": {"value": "4", "origin": "derived"},
                    "split_first_type": {"value": "A9", "origin": "derived"},
                    "line_orders": {"value": ["3"], "origin": "derived"}"#;
    let r = run_text("t", &scenario("plane-check", payload, expect));
    assert_eq!(r.exit_code, 0, "{:?} {:#?}", r.error, r.records);

    let sparse = r#"{"form": {"0,2,1": "1", "3,0,0": "-1"}, "point": "[0:0:1]"}"#;
    let r = run_text("t", &scenario("plane-check", sparse, r#""an_type": {"value": "A2", "origin": "trivial"}"#));
    assert_eq!(r.exit_code, 0, "{:?} {:#?}", r.error, r.records);

    let wrong = r#"{"form": "y^2*z - x^3", "point": "[0:0:1]", "split": ["y", "y*z"]}"#;
    assert_eq!(run_text("t", &scenario("plane-check", wrong, "")).exit_code, 2);
}
