use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use penonlab::glob::{doubly_degenerate, Mode};

fn penonlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_penonlab")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn single_scenarios_pass_and_write_reports() {
    let dir = tempfile::tempdir().unwrap();
    for sc in ["eckmann-hilton-reflexive", "clockface-nonreflexive", "braid-counterexample"] {
        let path = dir.path().join(format!("{sc}.json"));
        let out = penonlab(&["run", sc, "--json", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{sc}: {}", String::from_utf8_lossy(&out.stdout));
        let report = read_json(&path);
        assert_eq!(report["scenario"], sc);
        assert_eq!(report["verdict"], "pass");
        assert!(report["error"].is_null());
    }
}

#[test]
fn run_all_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let first = penonlab(&["run-all", "--braid-pairs", "60", "--json", a.to_str().unwrap()]);
    let second = penonlab(&["run-all", "--braid-pairs", "60", "--json", b.to_str().unwrap()]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let agg = read_json(&a);
    assert_eq!(agg["exit_code"], 0);
    let names: Vec<&str> = agg["reports"].as_array().unwrap().iter().map(|r| r["scenario"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(names.len(), 6);
}

#[test]
fn mode_conflicts_are_errors() {
    let out = penonlab(&["run", "clockface-nonreflexive", "--mode", "reflexive"]);
    assert_eq!(code(&out), 2);
    let out = penonlab(&["run-all", "--mode", "reflexive", "--braid-pairs", "10"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn unknown_scenario_and_bad_input_exit_2() {
    assert_eq!(code(&penonlab(&["run", "no-such-scenario"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&penonlab(&["run", "eckmann-hilton-reflexive", "--input", bad.to_str().unwrap()])), 2);
}

#[test]
fn presentation_files_are_accepted_and_fingerprinted() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("d.json");
    std::fs::write(&input, doubly_degenerate(Mode::Reflexive).to_json_string()).unwrap();
    let report = dir.path().join("r.json");
    let out =
        penonlab(&["run", "symmetry-forced", "--input", input.to_str().unwrap(), "--json", report.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r = read_json(&report);
    assert_eq!(r["config"]["input"], input.to_str().unwrap());
    let fp = r["config"]["presentation_fingerprint"].as_str().unwrap();
    assert_eq!(fp.len(), 16);

    // a reflexive presentation cannot drive a non-reflexive scenario
    assert_eq!(code(&penonlab(&["run", "braiding-sketch", "--input", input.to_str().unwrap()])), 2);
}

#[test]
fn braid_eq_exit_codes() {
    assert_eq!(code(&penonlab(&["braid", "eq", "3:1,2,1", r#"{"n":3,"word":[2,1,2]}"#])), 0);
    assert_eq!(code(&penonlab(&["braid", "eq", "3:1,-1", "3:"])), 0);
    let out = penonlab(&["braid", "eq", "4:1", "4:3"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("permutation"));
    assert_eq!(code(&penonlab(&["braid", "eq", "2:1,1", "2:"])), 1);
    assert_eq!(code(&penonlab(&["braid", "eq", "17:1", "17:1"])), 2);
    assert_eq!(code(&penonlab(&["braid", "eq", "3:5", "3:1"])), 2);
    assert_eq!(code(&penonlab(&["braid", "eq", "3:1", "4:1"])), 2);
}

#[test]
fn normalize_prints_typing_and_image() {
    let out = penonlab(&["normalize", r#"{"Contr":[{"Gen":[2,"alpha"]},{"Gen":[2,"alpha"]}]}"#]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dim"], 3);
    assert!(v["term"].get("Ident").is_some());

    let out = penonlab(&["normalize", r#"{"Comp":[0,{"Gen":[2,"alpha"]},{"Gen":[1,"e"]}]}"#]);
    assert_eq!(code(&out), 1);
    assert_eq!(code(&penonlab(&["normalize", "{oops"])), 2);
}

#[test]
fn schema_is_printed() {
    let out = penonlab(&["schema"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["$defs"]["report"].is_object());
}

#[test]
fn shipped_presentations_match_the_builtin_ones() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("presentations");
    for (file, mode) in [("d-nonreflexive.json", Mode::NonReflexive), ("d-reflexive.json", Mode::Reflexive)] {
        let p = penonlab::glob::Presentation::from_json_file(&dir.join(file)).unwrap();
        assert_eq!(p, doubly_degenerate(mode), "{file}");
    }
    let out =
        penonlab(&["run", "clockface-nonreflexive", "--input", dir.join("d-nonreflexive.json").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
}
