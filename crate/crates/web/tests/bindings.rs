use serde_json::Value;

use penonlab_web::{braid_eq_json, clockface_json, symmetry_json};

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn clock_hours_cover_the_face_once() {
    for mode in ["reflexive", "nonreflexive"] {
        let face = parse(&clockface_json(mode).unwrap());
        let mut hours: Vec<u64> =
            face["hours"].as_array().unwrap().iter().map(|h| h["hour"].as_u64().unwrap()).collect();
        hours.sort();
        assert_eq!(hours, (1..=12).collect::<Vec<_>>());
        let in_classes: usize = face["classes"].as_array().unwrap().iter().map(|c| c.as_array().unwrap().len()).sum();
        assert_eq!(in_classes, 12);
    }
}

#[test]
fn braid_report_carries_invariants() {
    let r = parse(&braid_eq_json("3:1,1", "3:").unwrap());
    assert_eq!(r["equal"], false);
    assert_eq!(r["left"]["exponent_sum"], 2);
    assert_eq!(r["left"]["permutation"], serde_json::json!([0, 1, 2]));
    assert_eq!(r["distinguished_by"], "exponent sum");
    assert!(braid_eq_json("nonsense", "3:").is_err());
}

#[test]
fn zero_power_fails_naturality() {
    let rows = parse(&symmetry_json(0).unwrap());
    assert_eq!(rows[0]["k"], 0);
    assert_eq!(rows[0]["failed_axiom"], "naturality");
}
