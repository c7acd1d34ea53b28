use errprompt::prompts::{render, translate_bindings, validate, PromptCatalog, Task, Violation};
use errprompt::Error;
use proptest::prelude::*;

#[test]
fn renders_prompt3() {
    let p3 = PromptCatalog::builtin().get("prompt3").unwrap().clone();
    let out = render(&p3, &translate_bindings("English", "German", "Hello")).unwrap();
    assert_eq!(out, "Translate this from English to German:\nEnglish: Hello\nGerman:");
}

#[test]
fn renders_minimal() {
    let minimal = PromptCatalog::builtin().get("minimal").unwrap().clone();
    let out = render(&minimal, &translate_bindings("German", "English", "Hallo")).unwrap();
    assert_eq!(out, "German: Hallo\nEnglish:");
}

#[test]
fn missing_binding_names_the_placeholder() {
    let p3 = PromptCatalog::builtin().get("prompt3").unwrap().clone();
    let mut bindings = translate_bindings("English", "German", "x");
    bindings.remove("src_text");
    match render(&p3, &bindings) {
        Err(Error::MissingBinding(name)) => assert_eq!(name, "src_text"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn bundled_prompts_validate() {
    let catalog = PromptCatalog::builtin();
    assert_eq!(catalog.iter().filter(|t| t.task == Task::Translate).count(), 5);
    assert_eq!(catalog.iter().filter(|t| t.task == Task::Qe).count(), 2);
    for t in catalog.iter() {
        assert!(t.validate().is_empty(), "{}: {:?}", t.id, t.validate());
    }
}

#[test]
fn reports_missing_language_placeholders() {
    let v = validate("Translate {src_text}", Task::Translate);
    assert!(v.contains(&Violation::Missing("src_lang".into())));
    assert!(v.contains(&Violation::Missing("tgt_lang".into())));
    assert_eq!(v.len(), 2);
}

#[test]
fn casual_rewrite_passes() {
    let v = validate(r"change lang {src_lang} -> {tgt_lang}: {src_text} thx", Task::Translate);
    assert!(v.is_empty(), "{v:?}");
}

#[test]
fn reports_unknown_and_duplicated() {
    let v = validate("{src_lang} {tgt_lang} {src_text} {src_text} {foo}", Task::Translate);
    assert!(v.contains(&Violation::Duplicated("src_text".into())));
    assert!(v.contains(&Violation::Unknown("foo".into())));
    let v = validate("{src_lang} {tgt_lang} {src_text}", Task::Qe);
    assert_eq!(v, vec![Violation::Missing("tgt_text".into())]);
}

proptest! {
    #[test]
    fn rendering_is_injective_in_source(a in "\\PC{1,40}", b in "\\PC{1,40}") {
        let catalog = PromptCatalog::builtin();
        for t in catalog.iter().filter(|t| t.task == Task::Translate) {
            let ra = render(t, &translate_bindings("English", "German", &a)).unwrap();
            let rb = render(t, &translate_bindings("English", "German", &b)).unwrap();
            prop_assert_eq!(ra == rb, a == b);
        }
    }

    #[test]
    fn valid_templates_render(prefix in "[a-zA-Z ,.:]{0,20}", middle in "[a-zA-Z ,.:]{0,20}", src in "\\PC{1,30}") {
        let text = format!("{prefix}{{src_lang}}{middle}{{tgt_lang}}: {{src_text}}");
        prop_assert!(validate(&text, Task::Translate).is_empty());
        let out = errprompt::prompts::render_text(&text, Task::Translate.required_placeholders(), &translate_bindings("Czech", "Ukrainian", &src)).unwrap();
        prop_assert!(out.contains(&src));
    }
}
