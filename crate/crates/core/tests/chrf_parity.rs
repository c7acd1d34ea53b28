mod common;

use std::time::Instant;

use errprompt::intensity::{chrf_default, ChrfSignature};
use serde::Deserialize;

#[derive(Deserialize)]
struct Fixture {
    signature: String,
    cases: Vec<Case>,
}

#[derive(Deserialize)]
struct Case {
    kind: String,
    hypothesis: String,
    reference: String,
    score: f64,
}

#[test]
fn matches_reference_scores() {
    let fixture: Fixture = common::load_json("chrf_oracle.json");
    assert!(fixture.signature.starts_with(&ChrfSignature::default().signature_string()));
    assert_eq!(fixture.cases.iter().filter(|c| c.kind == "random").count(), 50);
    assert_eq!(fixture.cases.len(), 60);
    let start = Instant::now();
    for (i, c) in fixture.cases.iter().enumerate() {
        let got = chrf_default(&c.hypothesis, &c.reference).unwrap();
        assert!(
            (got - c.score).abs() <= 1e-4,
            "case {i} ({}): got {got}, expected {}",
            c.kind,
            c.score
        );
    }
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn identical_strings_score_100() {
    let s = r"Translate this from {src_lang} to {tgt_lang}:\n{src_lang}: {src_text}\n{tgt_lang}:";
    assert!((chrf_default(s, s).unwrap() - 100.0).abs() < 1e-9);
}

#[test]
fn whitespace_is_ignored() {
    let a = chrf_default("Translate this text", "Translatethis   text").unwrap();
    assert!((a - 100.0).abs() < 1e-9);
}

#[test]
fn empty_reference_is_an_error() {
    assert!(chrf_default("abc", "").is_err());
    assert!(chrf_default("abc", "   ").is_err());
}
