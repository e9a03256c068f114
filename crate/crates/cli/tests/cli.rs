use std::path::{Path, PathBuf};
use std::process::Command;

use l1fixed_cli::{run_scenario, run_suite, Overrides, Report, Status};

fn scenarios_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_l1fixed"))
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

const NON_INVARIANT: &str = r#"{
  "name": "not_invariant",
  "task": "fixed_point",
  "space": {"kind": "l1", "dim": 2},
  "points": [[1, 0], [0, 0]],
  "group": {"generators": [{"perm": [1, 0]}]}
}"#;

#[test]
fn diagonal_pair_scenario_reports_half() {
    let r = run_scenario(&scenarios_dir().join("diagonal_pair_centre.json"), &Overrides::default());
    assert_eq!(r.status, Status::Ok, "{r:?}");
    assert_eq!(r.results.radius, Some(0.5));
    assert!(r.checks.iter().all(|c| c.passed));
}

#[test]
fn singleton_scenario_has_zero_radius() {
    let r = run_scenario(&scenarios_dir().join("singleton_radius.json"), &Overrides::default());
    assert_eq!(r.results.radius, Some(0.0));
}

#[test]
fn non_invariant_set_is_a_precondition_failure() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.json", NON_INVARIANT);
    let r = run_scenario(&p, &Overrides::default());
    assert_eq!(r.status, Status::PreconditionFailed);
    assert!(r.message.as_deref().unwrap().contains("(g1, a0)"), "{:?}", r.message);
    let out = bin().arg("fixed-point").arg(&p).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn parse_errors_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "typo.json", "{\n  \"name\": \"t\",\n  \"task\": \"radius\",\n  \"space\": {\"kind\": \"l1\", \"dim\": \"two\"}\n}");
    let r = run_scenario(&p, &Overrides::default());
    assert_eq!(r.status, Status::InputError);
    let msg = r.message.unwrap();
    assert!(msg.contains("line ") && msg.contains("`space`") && msg.contains("\"two\""), "{msg}");
    let out = bin().arg("radius").arg(&p).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn group_cap_is_a_resource_error() {
    let out = bin()
        .args(["--max-group", "3", "fixed-point"])
        .arg(scenarios_dir().join("hyperoctahedral_orbit.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn one_corrupted_scenario_fails_the_suite() {
    let dir = tempfile::tempdir().unwrap();
    let names = ["diagonal_pair_centre.json", "singleton_radius.json", "swap_cocycle.json"];
    for n in names {
        std::fs::copy(scenarios_dir().join(n), dir.path().join(n)).unwrap();
    }
    write(dir.path(), "zz_corrupt.json", "{ \"name\": \"zz\", \"task\": ");
    let outcome = run_suite(dir.path(), None, &Overrides::default()).unwrap();
    assert_ne!(outcome.exit_code, 0);
    assert_eq!(outcome.reports.len(), names.len() + 1);
    assert_eq!(outcome.reports.iter().filter(|r| r.status == Status::Ok).count(), names.len());
    for w in &outcome.written {
        assert!(w.exists());
    }
    let out = bin().arg("check").arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.contains("3/4 ok"), "{table}");
}

#[test]
fn empty_filter_is_an_input_error() {
    let err = run_suite(&scenarios_dir(), Some("no_such_*.json"), &Overrides::default()).unwrap_err();
    assert_eq!(err.status, Status::InputError);
    let out = bin().arg("check").arg(scenarios_dir()).args(["--filter", "no_such_*.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(scenarios_dir()).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().is_some_and(|e| e == "json") && !p.to_string_lossy().ends_with(".report.json") {
            let r = run_scenario(&p, &Overrides { iters: Some(2000), ..Default::default() });
            let text = r.to_json();
            let back = Report::from_json(&text).unwrap();
            assert_eq!(back, r);
            assert_eq!(back.to_json(), text);
        }
    }
    let p = write(dir.path(), "bad.json", NON_INVARIANT);
    let r = run_scenario(&p, &Overrides::default());
    assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
}

#[test]
fn binary_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("out.json");
    let out = bin()
        .args(["--report"])
        .arg(&out_path)
        .arg("centre")
        .arg(scenarios_dir().join("diagonal_pair_centre.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r = Report::from_json(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(r.results.point, Some(vec![0.5, 0.5]));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), r.to_json());
}

#[test]
fn seed_override_is_deterministic() {
    let p = scenarios_dir().join("trace_class_pair_radius.json");
    let o = Overrides { seed: Some(99), iters: Some(3000), ..Default::default() };
    assert_eq!(run_scenario(&p, &o).body_json(), run_scenario(&p, &o).body_json());
}
