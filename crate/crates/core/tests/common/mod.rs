#![allow(dead_code)]

pub mod stub;

use std::path::{Path, PathBuf};

use errprompt::gateway::{Backend, Gateway, MockBackend, ResponseCache};
use errprompt::orchestrator::ExperimentConfig;
use serde::de::DeserializeOwned;

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn load_json<T: DeserializeOwned>(name: &str) -> T {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    serde_json::from_str(&text).unwrap()
}

pub fn mock_gateway(backend: MockBackend) -> Gateway {
    Gateway::new(Box::new(backend) as Box<dyn Backend>, ResponseCache::in_memory(), 4)
}

pub fn persistent_mock_gateway(backend: MockBackend, cache: &Path) -> Gateway {
    Gateway::new(Box::new(backend) as Box<dyn Backend>, ResponseCache::open(cache).unwrap(), 4)
}

/// A config whose relative paths land in `dir` and whose data comes from
/// the bundled fixtures.
pub fn config_in(dir: &Path, body: &str) -> ExperimentConfig {
    let data = fixture("data");
    let text = format!(
        "{body}\n[paths]\n\
         dataset = \"{data}/{{lang_pair}}.jsonl\"\n\
         system_outputs = \"{data}/{{lang_pair}}.systems.jsonl\"\n\
         human_scores = \"{data}/{{lang_pair}}.human.csv\"\n\
         cache = \"cache.jsonl\"\n\
         similarity_cache = \"similarity.jsonl\"\n\
         output = \"records.jsonl\"\n",
        data = data.display()
    );
    let path = dir.join("experiment.toml");
    std::fs::write(&path, text).unwrap();
    ExperimentConfig::load(&path).unwrap()
}

pub fn read_lines(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path)
        .unwrap_or_default()
        .lines()
        .map(str::to_string)
        .collect()
}

pub fn run_translation(config: &ExperimentConfig, gateway: &Gateway) -> errprompt::orchestrator::RunSummary {
    errprompt::orchestrator::run_translation_experiment(
        config,
        errprompt::orchestrator::Services { gateway, sidecar: None },
    )
    .unwrap()
}

pub fn run_qe(config: &ExperimentConfig, gateway: &Gateway) -> errprompt::orchestrator::RunSummary {
    errprompt::orchestrator::run_qe_experiment(
        config,
        errprompt::orchestrator::Services { gateway, sidecar: None },
    )
    .unwrap()
}

/// 2 base prompts x orthographic + phrasal, one prompt per parametrization.
pub const TWO_BY_TWO: &str = r#"
task = "translate"
master_seed = 42
lang_pairs = ["en-de"]
models = ["mock-model"]
base_prompts = ["prompt3", "prompt1"]
replicates = 5
segments_per_pair = 20
sampling = "parametrization"
backend = "mock"

[buckets]
count = 3

[[profiles]]
kind = "orthographic"

[[profiles]]
kind = "phrasal"
"#;

/// Mock translator that answers with the reference when the rendered prompt
/// still contains the word "Translate" intact, and echoes the source
/// otherwise.
pub fn literate_mock() -> MockBackend {
    let segments = errprompt::orchestrator::read_jsonl::<errprompt::orchestrator::Segment>(&fixture("data/en-de.jsonl"))
        .unwrap();
    let by_source: std::collections::HashMap<String, String> =
        segments.into_iter().map(|s| (s.source, s.reference)).collect();
    MockBackend::with_responder(move |req| {
        let source = req.tag.source_text.clone().unwrap_or_default();
        if req.prompt_text.contains("Translate") {
            by_source.get(&source).cloned().unwrap_or(source)
        } else {
            errprompt::gateway::mock_echo(req)
        }
    })
}

pub fn naive_pearson(points: &[(f64, f64)]) -> Option<f64> {
    let n = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx <= 1e-12 || syy <= 1e-12 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

/// One-pass recomputation of the similarity/chrF correlation grid:
/// (profile, prompt) -> (mean similarity, mean chrF) per correlation point.
pub fn brute_force_points(
    records: &[errprompt::scoring::TranslationRecord],
) -> std::collections::BTreeMap<(String, String), Vec<(f64, f64)>> {
    use std::collections::BTreeMap;
    let mut acc: BTreeMap<(String, String, String), (f64, f64, usize)> = BTreeMap::new();
    for r in records {
        let Some(profile) = r.prompt.profile else { continue };
        let e = acc
            .entry((profile.to_string(), r.prompt.base_prompt_id.clone(), r.prompt.point_key()))
            .or_default();
        e.0 += r.prompt.similarity_surface.unwrap();
        e.1 += r.chrf_score;
        e.2 += 1;
    }
    let mut out: BTreeMap<(String, String), Vec<(f64, f64)>> = BTreeMap::new();
    for ((profile, prompt, _), (s, q, n)) in acc {
        out.entry((profile, prompt)).or_default().push((s / n as f64, q / n as f64));
    }
    out
}
