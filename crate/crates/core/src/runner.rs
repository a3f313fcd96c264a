//! Executes scenarios and turns computed values into report records.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::check::{Check, Status};
use crate::constructions::{run_pipeline, PipelineSpec, SingularityType};
use crate::curves::families::find_row;
use crate::curves::linsys::{linear_system_dim, stabilizer_dim};
use crate::curves::{
    detect_33_point, mult_tree, restrict_to_line, splitting_invariants, HomogeneousForm, Line, Poly, ProjPoint,
    ThreeThree,
};
use crate::graphs::{
    classify_minimally_elliptic, fundamental_cycle, is_negative_definite, match_catalog, CurveConfiguration, FiberType,
};
use crate::report::{Record, ScenarioReport};
use crate::scenario::{
    Body, ConfigPayload, DimsPayload, FormPayload, Origin, PipelinePayload, PlanePayload, RunPayload, Scenario,
    ScenarioError,
};
use crate::value::Value;

/// Value reported for an expectation nothing computed.
pub const ABSENT: &str = "<absent>";

/// Computed values of one unit of work, keyed by the names expectations use.
struct Outcome {
    context: String,
    values: BTreeMap<String, Value>,
    /// Internal consistency checks that failed.
    failures: Vec<Check>,
}

fn payload_err(e: impl std::fmt::Display) -> ScenarioError {
    ScenarioError::Payload(e.to_string())
}

fn pipeline_spec(run: &RunPayload) -> Result<PipelineSpec, ScenarioError> {
    let ty: SingularityType = run.ty.parse().map_err(payload_err)?;
    let mut spec = PipelineSpec::new(ty).with_t_index(run.t_index);
    if let Some(f) = &run.fiber {
        let fiber = FiberType::parse(f).ok_or_else(|| ScenarioError::Payload(format!("unknown fibre type {f:?}")))?;
        spec = spec.with_fiber(fiber);
    }
    if let Some(fam) = &run.family {
        spec = spec.with_family(&fam.row, fam.variant.as_deref());
    }
    spec.exceptional.clone_from(&run.exceptional);
    spec.seed = run.seed;
    Ok(spec)
}

fn run_pipelines(p: &PipelinePayload) -> Result<Vec<Outcome>, ScenarioError> {
    if p.runs.is_empty() {
        return Err(ScenarioError::Payload("a pipeline scenario needs at least one run".into()));
    }
    let qualify = p.runs.len() > 1;
    p.runs
        .iter()
        .map(|run| {
            let result = run_pipeline(&pipeline_spec(run)?).map_err(payload_err)?;
            let context = result.context.clone();
            let key = |n: &str| if qualify { format!("{context}:{n}") } else { n.to_string() };
            let values = result.checklist.values().iter().map(|(k, v)| (key(k), v.clone())).collect();
            let failures = result
                .checks()
                .iter()
                .filter(|c| c.status == Status::Fail)
                .map(|c| Check { name: key(&c.name), ..c.clone() })
                .collect();
            Ok(Outcome { context, values, failures })
        })
        .collect()
}

fn run_config(name: &str, p: &ConfigPayload) -> Result<Outcome, ScenarioError> {
    let config = CurveConfiguration::from_spec(&p.config).map_err(payload_err)?;
    let mut values = BTreeMap::new();
    values.insert("negative_definite".to_string(), Value::from(is_negative_definite(&config)));
    values.insert("connected".to_string(), Value::from(config.is_connected()));
    let catalog = match_catalog(&config).map_or_else(|| "none".to_string(), |e| e.label.clone());
    values.insert("catalog".to_string(), Value::from(catalog));
    if let Ok(z) = fundamental_cycle(&config) {
        values.insert("Z".to_string(), Value::ints(&z.coeffs));
        values.insert("Z_sq".to_string(), Value::from(z.z_sq));
        values.insert("K_dot_Z".to_string(), Value::from(z.k_dot_z));
        values.insert("pa_Z".to_string(), Value::from(z.pa));
        values.insert("laufer_steps".to_string(), Value::from(z.steps as i64));
    }
    if let Ok(e) = classify_minimally_elliptic(&config) {
        values.insert("ellipticity".to_string(), Value::from(e.label()));
    }
    Ok(Outcome { context: format!("config/{name}"), values, failures: Vec::new() })
}

fn form_from(p: &FormPayload) -> Result<HomogeneousForm, ScenarioError> {
    match p {
        FormPayload::Text(s) => HomogeneousForm::parse(s).map_err(payload_err),
        FormPayload::Sparse(map) => {
            let terms = map
                .iter()
                .map(|(k, c)| {
                    let exps: Vec<u32> =
                        k.split(',').map(|e| e.trim().parse()).collect::<Result<_, _>>().map_err(payload_err)?;
                    if exps.len() != 3 {
                        return Err(ScenarioError::Payload(format!("exponent key {k:?} needs three entries")));
                    }
                    Ok((exps, crate::rational::parse_rat(c).map_err(payload_err)?))
                })
                .collect::<Result<Vec<_>, ScenarioError>>()?;
            HomogeneousForm::new(Poly::from_terms(3, terms)).map_err(payload_err)
        }
    }
}

fn three_three_value(t: &ThreeThree) -> Value {
    match t {
        ThreeThree::No => Value::from(false),
        ThreeThree::Yes { n: Some(n) } => Value::from(format!("T2,3,{n}")),
        ThreeThree::Yes { n: None } => Value::from("[3,3]"),
        ThreeThree::Undecidable => Value::from("undecidable"),
    }
}

fn run_plane(name: &str, p: &PlanePayload) -> Result<Outcome, ScenarioError> {
    let form = form_from(&p.form)?;
    let point = ProjPoint::parse(&p.point).map_err(payload_err)?;
    let germ = form.dehomogenize(&point);
    let tree = mult_tree(&germ, 12);
    let mut values = BTreeMap::new();
    values.insert("an_type".to_string(), Value::from(crate::curves::an_type_of_germ(&germ).to_string()));
    values.insert("three_three".to_string(), three_three_value(&detect_33_point(&form, &point)));
    values.insert(
        "mult_sequence".to_string(),
        Value::List(tree.sequence().into_iter().map(|m| Value::from(i64::from(m))).collect()),
    );
    values.insert("delta".to_string(), tree.delta().map_or(Value::from("unknown"), |d| Value::from(i64::from(d))));
    if let Some(mu) = crate::curves::milnor_number(&germ) {
        values.insert("milnor".to_string(), Value::from(mu as i64));
    }
    if let Some(l) = &p.line {
        let line = Line::new(ProjPoint::parse(l).map_err(payload_err)?.coords().clone()).map_err(payload_err)?;
        let marked: Vec<ProjPoint> =
            p.marked.iter().map(|m| ProjPoint::parse(m)).collect::<Result<_, _>>().map_err(payload_err)?;
        let r = restrict_to_line(&form, &line, &marked).map_err(payload_err)?;
        values.insert(
            "line_orders".to_string(),
            Value::List(r.orders.iter().map(|&k| Value::from(i64::from(k))).collect()),
        );
        values.insert("line_residual".to_string(), Value::from(i64::from(r.residual_degree)));
    }
    if let Some([a, b]) = &p.split {
        let (fa, fb) = (form_from(a)?, form_from(b)?);
        if &(fa.poly() * fb.poly()) != form.poly() {
            return Err(ScenarioError::Payload("split factors do not multiply to the form".into()));
        }
        let s = splitting_invariants(fa.poly(), fb.poly(), &point);
        let i = s.intersection.map_or(Value::from(ABSENT), |i| Value::from(i as i64));
        values.insert("split_intersection".to_string(), i);
        values.insert("split_first_type".to_string(), Value::from(s.first_type.to_string()));
    }
    Ok(Outcome { context: format!("plane/{name}"), values, failures: Vec::new() })
}

fn run_dims(p: &DimsPayload) -> Result<Outcome, ScenarioError> {
    let row = find_row(&p.row, p.variant.as_deref()).map_err(payload_err)?;
    let family = row.family().map_err(payload_err)?;
    let mut values = BTreeMap::new();
    values.insert("count".to_string(), Value::from(row.count().map_err(payload_err)?));
    values.insert("coefficients".to_string(), Value::from(linear_system_dim(&family.system) + 1));
    values.insert("params".to_string(), Value::from(i64::from(family.params)));
    values.insert("stabilizer".to_string(), Value::from(stabilizer_dim(&family.markings)));
    Ok(Outcome { context: format!("{}/{}/{}", row.type_label(), row.label, row.variant), values, failures: Vec::new() })
}

fn outcomes(scenario: &Scenario) -> Result<Vec<Outcome>, ScenarioError> {
    match &scenario.body {
        Body::Pipeline(p) => run_pipelines(p),
        Body::ConfigCheck(p) => Ok(vec![run_config(&scenario.name, p)?]),
        Body::PlaneCheck(p) => Ok(vec![run_plane(&scenario.name, p)?]),
        Body::DimsCheck(p) => Ok(vec![run_dims(p)?]),
    }
}

/// Runs a parsed scenario. Every expectation yields one record; internal
/// checks that fail and are not already expected are appended as failures.
#[must_use]
pub fn run_scenario(scenario: &Scenario) -> ScenarioReport {
    let kind = scenario.body.kind();
    let outs = match outcomes(scenario) {
        Ok(o) => o,
        Err(e) => return ScenarioReport::malformed(&scenario.name, kind, e.to_string()),
    };
    let mut records = Vec::new();
    for (name, exp) in &scenario.expect {
        let hit = outs.iter().find_map(|o| o.values.get(name).map(|v| (o, v)));
        let record = match hit {
            Some((o, computed)) => {
                let bare = name.rsplit(':').next().unwrap_or(name);
                let c = Check::evaluate(&o.context, bare, exp.value.clone(), computed.clone(), &exp.anchor);
                Record {
                    name: name.clone(),
                    expected: c.expected,
                    computed: c.computed,
                    status: c.status,
                    anchor: c.anchor,
                    origin: exp.origin,
                }
            }
            None => Record {
                name: name.clone(),
                expected: exp.value.clone(),
                computed: Value::from(ABSENT),
                status: Status::Fail,
                anchor: exp.anchor.clone(),
                origin: exp.origin,
            },
        };
        records.push(record);
    }
    for o in &outs {
        for c in o.failures.iter().filter(|c| !scenario.expect.contains_key(&c.name)) {
            records.push(Record {
                name: c.name.clone(),
                expected: c.expected.clone(),
                computed: c.computed.clone(),
                status: Status::Fail,
                anchor: c.anchor.clone(),
                origin: Origin::Derived,
            });
        }
    }
    ScenarioReport::from_records(&scenario.name, kind, records)
}

/// Parses and runs scenario text; malformed input becomes an exit-2 report.
#[must_use]
pub fn run_text(label: &str, text: &str) -> ScenarioReport {
    match Scenario::parse(text) {
        Ok(s) => run_scenario(&s),
        Err(e) => ScenarioReport::malformed(label, "unknown", e.to_string()),
    }
}

#[must_use]
pub fn run_file(path: &Path) -> ScenarioReport {
    let label = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
    match std::fs::read_to_string(path) {
        Ok(text) => run_text(&label, &text),
        Err(e) => ScenarioReport::malformed(
            &label,
            "unknown",
            ScenarioError::Io { path: path.display().to_string(), message: e.to_string() }.to_string(),
        ),
    }
}

/// `*.scn` files of a directory in byte order of their names.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, ScenarioError> {
    let io = |e: std::io::Error| ScenarioError::Io { path: dir.display().to_string(), message: e.to_string() };
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "scn"))
        .collect();
    files.sort();
    Ok(files)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn absent_values_fail() {
        let text = r#"{"schema_version":"1","name":"t","kind":"dims-check","payload":{"row":"W13"},
            "expect":{"count":{"value":"16","origin":"stated"},"nothing":{"value":"1","origin":"trivial"}}}"#;
        let r = run_text("t", text);
        assert_eq!(r.exit_code, 1);
        let absent = r.records.iter().find(|r| r.name == "nothing").unwrap();
        assert_eq!(absent.computed, Value::from(ABSENT));
        assert_eq!(r.summary.pass, 1);
    }

    #[test]
    fn bad_payload_is_malformed() {
        let text = r#"{"schema_version":"1","name":"t","kind":"dims-check","payload":{"row":"Q99"}}"#;
        assert_eq!(run_text("t", text).exit_code, 2);
        assert_eq!(run_text("t", "{").exit_code, 2);
    }
}
