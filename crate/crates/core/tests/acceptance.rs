//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test --test acceptance`; the live smoke run needs
//! `ERRPROMPT_LIVE_MODEL` plus provider credentials.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use errprompt::analytics::{
    bucket_series, correlation_table, pearson, spearman, PointAggregation, QualityMetric, TableOptions,
    ALL_PROFILES, ALL_PROMPTS,
};
use errprompt::augmenters::{
    augment_template, build_prompt_set, compose_profile, uniform_augment_traced, CatalogSet, CharacterErrorSpec,
    ErrorProfile, ProfileKind,
};
use errprompt::gateway::{Backend, Gateway, OpenAiBackend, ResponseCache};
use errprompt::intensity::{chrf_default, SimilarityMeasure};
use errprompt::orchestrator::{analyze_translation, read_records, run_translation_experiment, Services};
use errprompt::prompts::{placeholder_names, validate, PromptCatalog};
use errprompt::scoring::{detect_language, parse_gemba, TranslationRecord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

type Check = fn() -> Result<Outcome, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn chrf_parity() -> Result<Outcome, String> {
    #[derive(Deserialize)]
    struct Fixture {
        cases: Vec<Case>,
    }
    #[derive(Deserialize)]
    struct Case {
        hypothesis: String,
        reference: String,
        score: f64,
    }
    let fixture: Fixture = common::load_json("chrf_oracle.json");
    ensure(fixture.cases.len() == 60, || format!("{} cases, expected 60", fixture.cases.len()))?;
    let start = Instant::now();
    let mut worst = 0.0f64;
    for c in &fixture.cases {
        let got = chrf_default(&c.hypothesis, &c.reference).map_err(|e| e.to_string())?;
        worst = worst.max((got - c.score).abs());
    }
    let elapsed = start.elapsed();
    ensure(worst <= 1e-4, || format!("max deviation {worst:e}"))?;
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(Outcome::Pass(format!("60 pairs, max deviation {worst:.1e}, {elapsed:.2?}")))
}

fn max_spec(kind: ProfileKind) -> (f64, Option<u8>) {
    let grid = kind.default_grid();
    let p = grid.iter().filter_map(|g| g.p).fold(0.0, f64::max);
    let level = grid.iter().filter_map(|g| g.level).max();
    (p, level)
}

fn identity_and_preservation() -> Result<Outcome, String> {
    let prompts = PromptCatalog::builtin();
    let catalogs = CatalogSet::builtin();
    let catalog_ids = ["prompt1", "prompt2", "prompt3", "prompt4"];
    let mut checked = 0;
    for kind in ProfileKind::ALL {
        let family = kind.catalog_family();
        // identity
        match (family, kind.char_augmenter()) {
            (None, Some(augmenter)) => {
                for t in prompts.iter() {
                    let out = augment_template(augmenter, &t.text, &CharacterErrorSpec::with_p(0.0), 1, &[])
                        .map_err(|e| e.to_string())?;
                    ensure(out == t.text, || format!("{kind}: p=0 changed {}", t.id))?;
                }
            }
            (Some(family), _) => {
                for id in catalog_ids {
                    for level in family.levels() {
                        let profile = ErrorProfile::new(kind)
                            .with_spec(CharacterErrorSpec::with_p(0.0))
                            .with_level(*level);
                        let stored = catalogs.get(family).variants(id, Some(*level)).map_err(|e| e.to_string())?;
                        for (i, v) in stored.iter().enumerate() {
                            let out = compose_profile(&profile, id, &catalogs, i, 3).map_err(|e| e.to_string())?;
                            ensure(&out == v, || format!("{kind}: {id} variant {i} not verbatim"))?;
                        }
                    }
                }
            }
            (None, None) => unreachable!(),
        }
        // preservation at max intensity
        let (p, level) = max_spec(kind);
        for seed in 0..1000u64 {
            let (id, out) = match family {
                None => {
                    let ids = prompts.ids();
                    let id = ids[seed as usize % ids.len()];
                    let text = &prompts.get(id).unwrap().text;
                    let out = augment_template(kind.char_augmenter().unwrap(), text, &CharacterErrorSpec::with_p(p), seed, &[])
                        .map_err(|e| e.to_string())?;
                    (id, out)
                }
                Some(family) => {
                    let id = catalog_ids[seed as usize % catalog_ids.len()];
                    let level = level.unwrap_or(family.levels()[0]);
                    let mut profile = ErrorProfile::new(kind).with_level(level);
                    if kind.char_augmenter().is_some() {
                        profile = profile.with_spec(CharacterErrorSpec::with_p(p));
                    }
                    let n = catalogs.get(family).variants(id, Some(level)).map_err(|e| e.to_string())?.len();
                    let index = ChaCha8Rng::seed_from_u64(seed).gen_range(0..n);
                    (id, compose_profile(&profile, id, &catalogs, index, seed).map_err(|e| e.to_string())?)
                }
            };
            let base = prompts.get(id).unwrap();
            for name in placeholder_names(&base.text) {
                ensure(out.contains(&format!("{{{name}}}")), || format!("{kind} seed {seed}: lost {{{name}}} in {out:?}"))?;
            }
            ensure(validate(&out, base.task).is_empty(), || format!("{kind} seed {seed}: invalid {out:?}"))?;
            checked += 1;
        }
    }
    Ok(Outcome::Pass(format!("7 profiles, {checked} augmentations, 100% placeholders kept")))
}

fn rate_law() -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let text: String = (0..10_000).map(|_| char::from(b'a' + rng.gen_range(0..26u8))).collect();
    let mut worst = 0.0f64;
    for k in 1..=9 {
        let p = f64::from(k) / 10.0;
        let a = uniform_augment_traced(&text, &CharacterErrorSpec::with_p(p), u64::from(k as u8), &[])
            .map_err(|e| e.to_string())?;
        ensure(a.eligible == 10_000, || format!("{} eligible characters", a.eligible))?;
        let rate = a.events as f64 / a.eligible as f64;
        worst = worst.max((rate - p).abs());
    }
    ensure(worst <= 0.02, || format!("max |rate - p| = {worst}"))?;
    Ok(Outcome::Pass(format!("p = 0.1..0.9 over 10,000 characters, max |rate - p| = {worst:.4}")))
}

fn monotone_degradation() -> Result<Outcome, String> {
    let base = PromptCatalog::builtin().get("prompt3").unwrap().clone();
    let grid = ProfileKind::Orthographic.default_grid();
    let profile = ErrorProfile::new(ProfileKind::Orthographic);
    let catalogs = CatalogSet::builtin();
    let mut means = Vec::new();
    for point in &grid {
        let set = build_prompt_set(&base, &profile, &[*point], 200, 42, &catalogs).map_err(|e| e.to_string())?;
        let total: f64 = set.iter().map(|p| chrf_default(&p.template_text, &base.text).unwrap()).sum();
        means.push(total / set.len() as f64);
    }
    ensure(means.windows(2).all(|w| w[1] < w[0]), || format!("not strictly decreasing: {means:.2?}"))?;
    let ps: Vec<f64> = grid.iter().map(|g| g.p.unwrap()).collect();
    let rho = spearman(&ps, &means).map_err(|e| e.to_string())?;
    ensure(rho <= -0.99, || format!("Spearman {rho}"))?;
    Ok(Outcome::Pass(format!(
        "means {:.1} -> {:.1} over 10 points x 200 samples, Spearman {rho:.3}",
        means[0],
        means[means.len() - 1]
    )))
}

fn statistics_parity() -> Result<Outcome, String> {
    #[derive(Deserialize)]
    struct Fixture {
        cases: Vec<Case>,
    }
    #[derive(Deserialize)]
    struct Case {
        x: Vec<f64>,
        y: Vec<f64>,
        r: f64,
    }
    let fixture: Fixture = common::load_json("pearson_oracle.json");
    ensure(fixture.cases.len() == 100, || "fixture needs 100 cases".into())?;
    let mut worst = 0.0f64;
    for c in &fixture.cases {
        worst = worst.max((pearson(&c.x, &c.y).map_err(|e| e.to_string())? - c.r).abs());
    }
    ensure(worst <= 1e-12, || format!("max deviation {worst:e}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..500 {
        let n = rng.gen_range(3..30);
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-50.0..50.0)).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-50.0..50.0)).collect();
        let (a, b) = (rng.gen_range(0.1..10.0), rng.gen_range(-20.0..20.0));
        let r = pearson(&x, &y).unwrap();
        let pos: Vec<f64> = x.iter().map(|v| a * v + b).collect();
        let neg: Vec<f64> = x.iter().map(|v| -a * v + b).collect();
        ensure((pearson(&pos, &y).unwrap() - r).abs() <= 1e-12, || "affine invariance violated".into())?;
        ensure((pearson(&neg, &y).unwrap() + r).abs() <= 1e-12, || "sign flip violated".into())?;
    }
    let half = pearson(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]).unwrap();
    ensure((half - 0.5).abs() <= 1e-15, || format!("([1,2,3],[1,3,2]) = {half}"))?;
    Ok(Outcome::Pass(format!("100 oracle vectors, max deviation {worst:.1e}; 500 affine checks")))
}

fn gemba_strictness() -> Result<Outcome, String> {
    #[derive(Deserialize)]
    struct Case {
        kind: String,
        raw: String,
        score: f64,
        ok: bool,
    }
    let cases: Vec<Case> = common::load_json("gemba_adversarial.json");
    for kind in ["no_numeral", "out_of_range", "prose_then_number"] {
        ensure(cases.iter().any(|c| c.kind == kind), || format!("fixture lacks {kind}"))?;
    }
    let mut failures = 0;
    for c in &cases {
        let got = parse_gemba(&c.raw);
        ensure(got == (c.score, c.ok), || format!("{:?} -> {got:?}, expected ({}, {})", c.raw, c.score, c.ok))?;
        if !got.1 {
            ensure(got.0 == 0.0, || format!("{:?}: failed parse scored {}", c.raw, got.0))?;
            failures += 1;
        }
    }
    Ok(Outcome::Pass(format!("{} replies, {failures} failures all scored 0", cases.len())))
}

fn end_to_end_mock() -> Result<Outcome, String> {
    let start = Instant::now();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = common::config_in(dir.path(), common::TWO_BY_TWO);
    let gw = common::mock_gateway(common::literate_mock());
    let summary = run_translation_experiment(&config, Services { gateway: &gw, sidecar: None }).map_err(|e| e.to_string())?;
    let records: Vec<TranslationRecord> = read_records(&summary.records_path).map_err(|e| e.to_string())?;
    let segments: std::collections::BTreeSet<_> = records.iter().map(|r| r.segment_id.clone()).collect();
    ensure(segments.len() == 20, || format!("{} segments", segments.len()))?;

    let options = TableOptions {
        quality: QualityMetric::Chrf,
        similarity: SimilarityMeasure::SurfaceChrf,
        aggregation: PointAggregation::Parametrization,
    };
    let table = correlation_table(&records, options).map_err(|e| e.to_string())?;
    ensure(table.row_labels() == ["orthographic", "phrasal", ALL_PROFILES], || format!("rows {:?}", table.row_labels()))?;
    ensure(table.column_labels() == ["prompt1", "prompt3", ALL_PROMPTS], || format!("columns {:?}", table.column_labels()))?;
    ensure(table.cells.len() == 9, || format!("{} cells", table.cells.len()))?;

    let brute = common::brute_force_points(&records);
    let defined: Vec<_> = brute.iter().filter(|(_, p)| common::naive_pearson(p).is_some()).collect();
    let pooled = |f: &dyn Fn(&str, &str) -> bool| -> Vec<(f64, f64)> {
        defined.iter().filter(|((a, b), _)| f(a, b)).flat_map(|(_, p)| p.iter().copied()).collect()
    };
    let agree = |cell: Option<f64>, points: Vec<(f64, f64)>| match (cell, common::naive_pearson(&points)) {
        (Some(a), Some(b)) => (a - b).abs() < 1e-9,
        (None, None) => true,
        _ => false,
    };
    for profile in &table.profiles {
        ensure(agree(table.cell(profile, ALL_PROMPTS).unwrap().r, pooled(&|p, _| p == profile)), || format!("{profile} margin"))?;
    }
    for prompt in &table.prompts {
        ensure(agree(table.cell(ALL_PROFILES, prompt).unwrap().r, pooled(&|_, q| q == prompt)), || format!("{prompt} margin"))?;
    }
    ensure(agree(table.cell(ALL_PROFILES, ALL_PROMPTS).unwrap().r, pooled(&|_, _| true)), || "corner margin".into())?;

    let first = std::fs::read(&summary.records_path).map_err(|e| e.to_string())?;
    let gw2 = common::mock_gateway(common::literate_mock());
    let rerun = run_translation_experiment(&config, Services { gateway: &gw2, sidecar: None }).map_err(|e| e.to_string())?;
    ensure(gw2.backend_calls() == 0 && rerun.written == 0, || "rerun made new calls".into())?;
    ensure(std::fs::read(&summary.records_path).unwrap() == first, || "rerun changed the records file".into())?;

    let fresh_dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let fresh_config = common::config_in(fresh_dir.path(), common::TWO_BY_TWO);
    let fresh = common::run_translation(&fresh_config, &common::mock_gateway(common::literate_mock()));
    ensure(std::fs::read(&fresh.records_path).unwrap() == first, || "fresh run differs".into())?;

    let reports = |d: &std::path::Path, records: &std::path::Path| {
        let out = d.join("reports");
        analyze_translation(records, &out, Default::default(), PointAggregation::Parametrization).unwrap();
        std::fs::read(out.join("correlations_chrf_surface_chrf.csv")).unwrap()
    };
    ensure(
        reports(dir.path(), &summary.records_path) == reports(fresh_dir.path(), &fresh.records_path),
        || "reports differ between identical runs".into(),
    )?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(Outcome::Pass(format!(
        "{} records, 3x3 grid, margins match pooled points, byte-identical rerun, {elapsed:.2?}",
        records.len()
    )))
}

fn language_detection() -> Result<Outcome, String> {
    #[derive(Deserialize)]
    struct Case {
        text: String,
        oracle: String,
    }
    let cases: Vec<Case> = common::read_lines(&common::fixture("langid_oracle.jsonl"))
        .iter()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    ensure(cases.len() == 200, || format!("{} sentences", cases.len()))?;
    let agree = cases
        .iter()
        .filter(|c| detect_language(&c.text).map(|d| d.code() == c.oracle).unwrap_or(false))
        .count();
    let german_output = cases.iter().find(|c| c.text.contains("lebensbejahend")).ok_or("German output sample missing")?;
    ensure(detect_language(&german_output.text).unwrap().code() == "de", || "German output sample misdetected".into())?;
    let rate = agree as f64 / cases.len() as f64;
    ensure(rate >= 0.95, || format!("agreement {rate:.3}"))?;
    Ok(Outcome::Pass(format!("{agree}/200 agree with the reference identifier ({:.1}%)", rate * 100.0)))
}

fn live_smoke() -> Result<Outcome, String> {
    let Ok(model) = std::env::var("ERRPROMPT_LIVE_MODEL") else {
        return Ok(Outcome::Skip("set ERRPROMPT_LIVE_MODEL and provider credentials to run".into()));
    };
    let backend = OpenAiBackend::from_env(Duration::from_secs(120)).map_err(|e| e.to_string())?;
    let pair = std::env::var("ERRPROMPT_LIVE_PAIR").unwrap_or_else(|_| "en-de".into());
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let body = format!(
        "task = \"translate\"\nmaster_seed = 1\nlang_pairs = [\"{pair}\"]\nmodels = [\"{model}\"]\n\
         base_prompts = [\"prompt3\"]\nreplicates = 10\nsegments_per_pair = 20\ninclude_control = true\n\
         backend = \"live\"\nmax_in_flight = 4\n\n[buckets]\ncount = 5\n\n[[profiles]]\nkind = \"uniform\"\n"
    );
    let mut config = common::config_in(dir.path(), &body);
    if let Ok(dataset) = std::env::var("ERRPROMPT_LIVE_DATASET") {
        config.paths.dataset = dataset;
    }
    let cache = ResponseCache::open(&config.paths.cache).map_err(|e| e.to_string())?;
    let gw = Gateway::new(Box::new(backend) as Box<dyn Backend>, cache, config.max_in_flight);
    let summary = run_translation_experiment(&config, Services { gateway: &gw, sidecar: None }).map_err(|e| e.to_string())?;
    let records: Vec<TranslationRecord> = read_records(&summary.records_path).map_err(|e| e.to_string())?;
    let series = bucket_series(&records, SimilarityMeasure::SurfaceChrf);
    let control = series.iter().find(|s| s.bucket.is_none()).ok_or("no control series")?;
    let top = series
        .iter()
        .filter(|s| s.bucket.is_some())
        .min_by_key(|s| s.bucket)
        .ok_or("no bucket series")?;
    ensure(control.n == 20, || format!("{} control records", control.n))?;
    ensure(top.on_target_rate <= control.on_target_rate, || {
        format!("on-target {:.2} at top intensity vs {:.2} without errors", top.on_target_rate, control.on_target_rate)
    })?;
    Ok(Outcome::Pass(format!(
        "{model}: {} series points; on-target {:.2} at top intensity vs {:.2} without errors",
        series.len(),
        top.on_target_rate,
        control.on_target_rate
    )))
}

fn main() {
    let checks: [(u8, &str, Check); 9] = [
        (1, "chrF parity", chrf_parity),
        (2, "identity and placeholder preservation", identity_and_preservation),
        (3, "uniform rate law", rate_law),
        (4, "monotone degradation", monotone_degradation),
        (5, "statistics parity", statistics_parity),
        (6, "GEMBA strictness", gemba_strictness),
        (7, "end-to-end mock run", end_to_end_mock),
        (8, "language detection", language_detection),
        (9, "live smoke run", live_smoke),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, name, check) in checks {
        let outcome = match catch_unwind(AssertUnwindSafe(check)) {
            Ok(Ok(o)) => o,
            Ok(Err(msg)) => Outcome::Fail(msg),
            Err(panic) => Outcome::Fail(
                panic
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panicked".into()),
            ),
        };
        match outcome {
            Outcome::Pass(detail) => println!("PASS {n}. {name}: {detail}"),
            Outcome::Fail(detail) => {
                failed += 1;
                println!("FAIL {n}. {name}: {detail}");
            }
            Outcome::Skip(detail) => println!("SKIP {n}. {name}: {detail}"),
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
