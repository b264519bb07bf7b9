//! Browser bindings for the demo page in `www/`.
//!
//! Every export returns a JSON string. The plain `*_json` functions carry the
//! logic so they can be tested natively; the wasm wrappers only turn errors
//! into exceptions.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use penonlab::braid::{self, BraidWord, CLI_MAX_STRANDS};
use penonlab::glob::{doubly_degenerate, names, Mode};
use penonlab::penon::FreePenonStructure;

/// The twelve clockface composites of `alpha` and `beta` with their classes.
pub fn clockface_json(mode: &str) -> Result<String, String> {
    let mode: Mode = mode.parse()?;
    let p = FreePenonStructure::new(&doubly_degenerate(mode)).map_err(|e| e.to_string())?;
    let face = p.clockface(names::ALPHA, names::BETA).map_err(|e| e.to_string())?;
    let hours: Vec<Value> = face
        .terms
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let class = face.classes.iter().position(|c| c.contains(&i)).expect("partition covers every term");
            json!({ "hour": penonlab::penon::hour(i), "term": t.to_string(), "class": class })
        })
        .collect();
    Ok(json!({ "mode": mode, "hours": hours, "classes": face.hour_classes() }).to_string())
}

fn word(s: &str) -> Result<BraidWord, String> {
    let w = BraidWord::parse(s).map_err(|e| e.to_string())?;
    if w.strands() > CLI_MAX_STRANDS {
        return Err(format!("{} strands exceeds the cap of {CLI_MAX_STRANDS}", w.strands()));
    }
    Ok(w)
}

fn describe(w: &BraidWord) -> Value {
    json!({
        "word": w.to_string(),
        "strands": w.strands(),
        "exponent_sum": w.exponent_sum(),
        "permutation": w.permutation(),
    })
}

/// Compares two braid words given as `3:1,-2` or `{"n":3,"word":[1,-2]}`.
pub fn braid_eq_json(w1: &str, w2: &str) -> Result<String, String> {
    let (a, b) = (word(w1)?, word(w2)?);
    let d = braid::distinguish(&a, &b).map_err(|e| e.to_string())?;
    Ok(json!({
        "left": describe(&a),
        "right": describe(&b),
        "equal": d.is_none(),
        "distinguished_by": d.map(|d| d.to_string()),
    })
    .to_string())
}

/// Verdicts for `gamma^k`, `|k| <= bound`.
pub fn symmetry_json(bound: u32) -> Result<String, String> {
    if bound > 64 {
        return Err(format!("bound {bound} is too large for the demo (max 64)"));
    }
    let rows: Vec<Value> = braid::symmetry_candidates(bound)
        .iter()
        .map(|v| {
            json!({
                "k": v.k,
                "candidate": v.candidate.to_string(),
                "is_symmetry": v.is_symmetry,
                "failed_axiom": v.failed_axiom,
                "witness": v.witness.as_ref().map(|w| json!({
                    "left": w.left.to_string(),
                    "right": w.right.to_string(),
                    "distinguished_by": w.distinguished_by.to_string(),
                })),
            })
        })
        .collect();
    Ok(Value::Array(rows).to_string())
}

#[wasm_bindgen]
pub fn clockface(mode: &str) -> Result<String, JsError> {
    clockface_json(mode).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn braid_eq(w1: &str, w2: &str) -> Result<String, JsError> {
    braid_eq_json(w1, w2).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn symmetry_candidates(bound: u32) -> Result<String, JsError> {
    symmetry_json(bound).map_err(|e| JsError::new(&e))
}
