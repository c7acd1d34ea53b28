mod common;

use errprompt::lang::Lang;
use errprompt::scoring::{detect_language, extract_translation, parse_gemba, ExtractMode};
use proptest::prelude::*;
use serde::Deserialize;

#[derive(Deserialize)]
struct GembaCase {
    kind: String,
    raw: String,
    score: f64,
    ok: bool,
}

#[test]
fn gemba_adversarial_fixture() {
    let cases: Vec<GembaCase> = common::load_json("gemba_adversarial.json");
    for kind in ["no_numeral", "out_of_range", "prose_then_number"] {
        assert!(cases.iter().any(|c| c.kind == kind));
    }
    for c in &cases {
        assert_eq!(parse_gemba(&c.raw), (c.score, c.ok), "{:?}", c.raw);
        if !c.ok {
            assert_eq!(c.score, 0.0);
        }
    }
}

#[test]
fn german_sample_is_detected() {
    let d = detect_language("Die Katze sitzt auf der Matte und schaut aus dem Fenster.").unwrap();
    assert_eq!(d.lang, Some(Lang::De));
}

#[test]
fn lead_in_is_stripped_only_in_strip_mode() {
    let raw = "Here is the translation:\nDas ist gut.";
    assert_eq!(extract_translation(raw, Lang::De, ExtractMode::Identity, None), raw);
    assert_eq!(extract_translation(raw, Lang::De, ExtractMode::Strip, None), "Das ist gut.");
}

proptest! {
    #[test]
    fn gemba_is_total_and_bounded(raw in "\\PC{0,120}") {
        let (score, ok) = parse_gemba(&raw);
        prop_assert!((0.0..=100.0).contains(&score));
        if !ok {
            prop_assert_eq!(score, 0.0);
        }
    }

    #[test]
    fn gemba_is_idempotent(raw in "[a-zA-Z0-9 .,:\\-/\\n]{0,80}") {
        let (score, ok) = parse_gemba(&raw);
        if ok {
            prop_assert_eq!(parse_gemba(&score.to_string()), (score, true));
        }
    }

    #[test]
    fn han_text_is_never_latin(han in "[\\u{4e00}-\\u{9fff}]{3,30}", latin in "[a-z ]{0,3}") {
        let d = detect_language(&format!("{han}{latin}")).unwrap();
        prop_assert!(!matches!(d.lang, Some(Lang::En | Lang::De | Lang::Cs)), "{:?}", d);
    }

    #[test]
    fn detection_stays_in_closed_set(text in "\\PC{1,60}") {
        prop_assume!(!text.trim().is_empty());
        let d = detect_language(&text).unwrap();
        prop_assert!(["en", "de", "cs", "uk", "zh", "ru", "other"].contains(&d.code()));
        prop_assert!((0.0..=1.0).contains(&d.confidence));
    }
}
