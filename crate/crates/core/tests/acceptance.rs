//! One line per acceptance criterion; exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use penonlab::braid::{self, Axiom, BraidWord, Distinction};
use penonlab::glob::{doubly_degenerate, names, Mode};
use penonlab::oracle;
use penonlab::penon::{FreePenonStructure, PenonTerm};
use penonlab::verify::{self, DEFAULT_SEED};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn structure(mode: Mode) -> FreePenonStructure {
    FreePenonStructure::new(&doubly_degenerate(mode)).expect("the default presentation is valid")
}

fn eckmann_hilton() -> Outcome {
    let face = structure(Mode::Reflexive).clockface(names::ALPHA, names::BETA).map_err(|e| e.to_string())?;
    ensure(face.terms.len() == 12, format!("{} clockface terms", face.terms.len()))?;
    ensure(face.classes.len() == 1, format!("{} classes, expected 1", face.classes.len()))?;
    Ok("12 clockface composites, one class".into())
}

fn symmetry_forced() -> Outcome {
    let p = structure(Mode::Reflexive);
    let (a, b) = (names::ALPHA, names::BETA);
    let v = |x: &str, y: &str| PenonTerm::comp(1, PenonTerm::gen(2, x), PenonTerm::gen(2, y));
    for (x, y) in [(a, b), (b, a), (a, a)] {
        p.braiding_cell(x, y).map_err(|e| format!("no braiding cell for ({x}, {y}): {e}"))?;
        let check = p.symmetry_check(&v(x, y), &v(y, x)).map_err(|e| e.to_string())?;
        ensure(check.holds, format!("round trip for ({x}, {y}) is not the unit"))?;
    }
    Ok("symmetry holds for (alpha,beta), (beta,alpha), (alpha,alpha)".into())
}

fn braid_counterexample() -> Outcome {
    let g2 = braid::gamma(1, 1).power(2);
    let d = braid::distinguish(&g2, &BraidWord::identity(2)).map_err(|e| e.to_string())?;
    ensure(d.is_some(), "gamma^2 equals the identity")?;
    let verdicts = braid::symmetry_candidates(braid::DEFAULT_K);
    ensure(verdicts.len() == 2 * braid::DEFAULT_K as usize + 1, "wrong candidate count")?;
    for v in &verdicts {
        ensure(!v.is_symmetry && v.witness.is_some(), format!("gamma^{} has no witness", v.k))?;
    }
    let zero = verdicts.iter().find(|v| v.k == 0).expect("k = 0 is in the window");
    let w = zero.witness.as_ref().expect("checked above");
    let s1 = BraidWord::new(4, vec![1]).unwrap();
    let s3 = BraidWord::new(4, vec![3]).unwrap();
    ensure(
        zero.failed_axiom == Some(Axiom::Naturality)
            && braid::equal(&w.left, &s1).unwrap()
            && braid::equal(&w.right, &s3).unwrap()
            && w.distinguished_by == Distinction::Permutation,
        format!("k = 0 witness is {} vs {}", w.left, w.right),
    )?;
    Ok(format!("gamma^2 != id ({}), all {} candidates |k| <= {} fail", d.unwrap(), verdicts.len(), braid::DEFAULT_K))
}

fn clockface_partition() -> Outcome {
    let face = structure(Mode::NonReflexive).clockface(names::ALPHA, names::BETA).map_err(|e| e.to_string())?;
    let got: BTreeSet<BTreeSet<usize>> = face.hour_classes().into_iter().map(|c| c.into_iter().collect()).collect();
    let want: BTreeSet<BTreeSet<usize>> = [vec![12, 1, 2, 10, 11], vec![3], vec![4, 5, 6, 7, 8], vec![9]]
        .into_iter()
        .map(|c| c.into_iter().collect())
        .collect();
    ensure(got == want, format!("classes {got:?}"))?;
    Ok("{12,1,2,10,11} {3} {4,5,6,7,8} {9}".into())
}

fn braiding_sketch() -> Outcome {
    let cert = structure(Mode::NonReflexive).sketch_braiding(names::ALPHA, names::BETA).map_err(|e| e.to_string())?;
    for name in ["lunit_e", "runit_e", "uu", "lunit_e*", "runit_e*", "uu*", "lambda_alpha", "rho_beta", "chi"] {
        ensure(cert.cell(name).is_some(), format!("missing cell {name}"))?;
    }
    ensure(cert.composites.len() >= 2, "missing composites")?;
    ensure(cert.all_verified(), "a chain check failed")?;
    ensure(cert.asserted.iter().any(|s| s.contains('5')), "step 5 is not recorded as asserted")?;
    Ok(format!(
        "{} cells, {} composites, {} chains verified, step 5 asserted",
        cert.cells.len(),
        cert.composites.len(),
        cert.chains.len()
    ))
}

fn pasting_crosscheck() -> Outcome {
    let mut parts = Vec::new();
    for mode in [Mode::NonReflexive, Mode::Reflexive] {
        let c = oracle::crosscheck_pasting(&doubly_degenerate(mode), 7, 7).map_err(|e| e.to_string())?;
        ensure(c.agrees(), format!("{mode:?}: {} disagreements", c.disagreements.len()))?;
        parts.push(format!("{mode:?} {} terms/{} classes", c.terms, c.oracle_classes));
    }
    Ok(format!("<= 7 nodes, 0 disagreements ({})", parts.join(", ")))
}

fn braid_crosscheck() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let c = oracle::crosscheck_braids(&mut rng, 500, 6);
    ensure(c.pairs >= 500, format!("only {} pairs", c.pairs))?;
    ensure(c.agrees(), format!("{} disagreements", c.disagreements.len()))?;
    Ok(format!(
        "{} pairs ({} connected, {} refuted, {} unresolved), {} short words, 0 disagreements",
        c.pairs, c.connected, c.refuted, c.unknown, c.short_words
    ))
}

fn law_suite() -> Outcome {
    let results = verify::law_suite(DEFAULT_SEED, 1000);
    ensure(!results.is_empty(), "no laws ran")?;
    for r in &results {
        ensure(r.instances >= 1000, format!("{}: only {} instances", r.law, r.instances))?;
        ensure(r.failures.is_empty(), format!("{}: {}", r.law, r.failures.join("; ")))?;
    }
    let least = results.iter().map(|r| r.instances).min().unwrap();
    Ok(format!("{} families, >= {least} instances each, no failures", results.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("Eckmann-Hilton in the reflexive case", eckmann_hilton),
        ("braidings are forced to be symmetric", symmetry_forced),
        ("no symmetry on the free braided category", braid_counterexample),
        ("non-reflexive clockface partition", clockface_partition),
        ("non-reflexive braiding construction", braiding_sketch),
        ("pasting engine agrees with the oracle", pasting_crosscheck),
        ("braid equality agrees with the oracle", braid_crosscheck),
        ("strict and braided laws on random instances", law_suite),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
