use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use unimodal::report::Report;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_unimodal"));
    cmd.env_remove("UNIMODAL_CORPUS");
    cmd
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json_report(out: &Output) -> Report {
    Report::from_json(&String::from_utf8_lossy(&out.stdout)).expect("machine report parses")
}

#[test]
fn e12_passes_fourteen_assertions() {
    let out = run(&["verify", corpus_dir().join("e12.scn").to_str().unwrap(), "--report=json"]);
    assert_eq!(code(&out), 0);
    let r = json_report(&out);
    assert_eq!(r.scenarios[0].summary.pass, 14);
    assert_eq!((r.summary.fail, r.summary.flagged), (0, 0));
}

#[test]
fn injected_fault_exits_one() {
    let out = run(&["verify", fixture("e12-e1-minus2.scn").to_str().unwrap(), "--report=json"]);
    assert_eq!(code(&out), 1);
    let failed: Vec<String> = json_report(&out).scenarios[0]
        .records
        .iter()
        .filter(|r| r.status.as_str() == "fail")
        .map(|r| r.name.clone())
        .collect();
    assert!(failed.contains(&"E1_adjunction_integral".to_string()), "{failed:?}");
}

#[test]
fn malformed_input_exits_two_with_location() {
    let out = run(&["verify", fixture("truncated.scn").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("line 8, column"), "{text}");
    assert_eq!(code(&run(&["verify", "/definitely/not/here.scn"])), 2);
    assert_eq!(code(&run(&["verify", fixture("truncated.scn").to_str().unwrap(), "--report=yaml"])), 2);
}

#[test]
fn corpus_has_exactly_three_flags() {
    let out = run(&["corpus", "--report=json"]);
    assert_eq!(code(&out), 0);
    let r = json_report(&out);
    assert_eq!(r.scenarios.len(), 27);
    assert_eq!((r.summary.fail, r.summary.errors, r.summary.flagged), (0, 0, 3));
    let mut flagged: Vec<(String, String)> = r
        .scenarios
        .iter()
        .flat_map(|s| {
            s.records.iter().filter(|x| x.status.as_str() == "flagged").map(|x| (s.scenario.clone(), x.name.clone()))
        })
        .collect();
    flagged.sort();
    let expected = [("dims-z13-2", "count"), ("e13-i2", "mhat"), ("e14-i4", "c2_X")];
    assert_eq!(flagged, expected.map(|(a, b)| (a.to_string(), b.to_string())));
}

#[test]
fn parallel_and_repeated_runs_are_byte_identical() {
    for format in ["--report=json", "--report=text"] {
        let serial = run(&["corpus", format]);
        let parallel = run(&["corpus", format, "--jobs=4"]);
        let again = run(&["corpus", format, "--jobs=4"]);
        assert_eq!(serial.stdout, parallel.stdout);
        assert_eq!(parallel.stdout, again.stdout);
    }
}

#[test]
fn report_round_trips() {
    let out = run(&["corpus", "--report=json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(Report::from_json(&text).unwrap().to_json(), text);
}

#[test]
fn environment_override_and_removal() {
    let tmp = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(corpus_dir()).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, tmp.path().join(p.file_name().unwrap())).unwrap();
    }
    let count = |dir: &Path| {
        let out = bin().env("UNIMODAL_CORPUS", dir).args(["corpus", "--report=json"]).output().unwrap();
        json_report(&out).scenarios.len()
    };
    assert_eq!(count(tmp.path()), 27);
    std::fs::remove_file(tmp.path().join("k-section.scn")).unwrap();
    assert_eq!(count(tmp.path()), 26);

    std::fs::copy(fixture("truncated.scn"), tmp.path().join("zz-truncated.scn")).unwrap();
    let out = run(&["corpus", "--dir", tmp.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn missing_corpus_directory_exits_two() {
    assert_eq!(code(&run(&["corpus", "--dir", "/definitely/not/here"])), 2);
}

#[test]
fn catalog_and_dims_listings() {
    let out = run(&["catalog", "--report=json"]);
    assert_eq!(code(&out), 0);
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let e13 = rows.as_array().unwrap().iter().find(|r| r["label"] == "E13").unwrap();
    assert_eq!((e13["Z_sq"].as_str(), e13["pa_Z"].as_str()), (Some("-1"), Some("1")));

    let out = run(&["dims", "--report=json"]);
    assert_eq!(code(&out), 0);
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let z13_2: Vec<&str> =
        rows.as_array().unwrap().iter().filter(|r| r["row"] == "Z13-2").map(|r| r["count"].as_str().unwrap()).collect();
    assert_eq!(z13_2, ["16", "15"]);
    let text = String::from_utf8(run(&["dims"]).stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("Z13-2") && l.contains("differs")));
}
