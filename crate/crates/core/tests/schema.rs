//! Reports, including failing and erroring ones, against the published schema.

use serde_json::Value;

use penonlab::glob::Mode;
use penonlab::verify::{self, Config, Scenario, REPORT_SCHEMA};

fn validator() -> jsonschema::Validator {
    let schema: Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(v: &jsonschema::Validator, text: &str) {
    let instance: Value = serde_json::from_str(text).unwrap();
    let errors: Vec<String> = v.iter_errors(&instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:#?}\n{text}");
}

#[test]
fn every_scenario_report_validates() {
    let v = validator();
    let config = Config { braid_pairs: 40, ..Config::default() };
    let agg = verify::run_all(&config);
    assert_eq!(agg.exit_code, 0);
    assert_valid(&v, &agg.to_json());
    for report in &agg.reports {
        assert_valid(&v, &report.to_json());
    }
}

#[test]
fn error_reports_validate() {
    let v = validator();
    let config = Config { mode: Some(Mode::Reflexive), ..Config::default() };
    let r = verify::run_scenario(Scenario::ClockfaceNonreflexive, &config);
    assert_eq!(r.exit_code(), 2);
    assert_valid(&v, &r.to_json());
}

#[test]
fn schema_rejects_a_witnessless_failure() {
    let v = validator();
    let config = Config::default();
    let mut report: Value =
        serde_json::from_str(&verify::run_scenario(Scenario::EckmannHiltonReflexive, &config).to_json()).unwrap();
    report["verdict"] = "fail".into();
    report["witnesses"] = Value::Array(vec![]);
    assert!(!v.is_valid(&report));
}
