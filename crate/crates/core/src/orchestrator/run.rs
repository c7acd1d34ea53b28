use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use rayon::prelude::*;

use super::config::{ExperimentConfig, PathsConfig, Sampling};
use super::segments::{load_segments, load_system_outputs, Segment, SystemOutput};
use super::store::{existing_keys, ErrorRecord, RecordStore};
use crate::analytics::HumanScores;
use crate::augmenters::{build_prompt_set, AugmentedPrompt, CatalogSet};
use crate::error::{Error, Result};
use crate::gateway::{CometItem, CompletionRequest, Gateway, RequestTag, SidecarClient};
use crate::intensity::{
    bucketize, measure_similarities, sample_from_bucket, sample_from_stratum, Bucketing,
    EmbeddingProvider, SimilarityCache, SimilarityMeasure,
};
use crate::lang::LangPair;
use crate::prompts::{qe_bindings, render, translate_bindings, PromptTemplate, Task};
use crate::scoring::{
    parse_gemba, qe_key, translation_key, PromptProvenance, QERecord, TranslationOutcome,
    TranslationRecord,
};

const CHUNK: usize = 256;

/// External services a run talks to.
#[derive(Clone, Copy)]
pub struct Services<'a> {
    pub gateway: &'a Gateway,
    pub sidecar: Option<&'a SidecarClient>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunSummary {
    pub records_path: PathBuf,
    pub errors_path: PathBuf,
    pub planned: usize,
    pub skipped: usize,
    pub written: usize,
    pub failed: usize,
}

/// Augmented prompts of one base prompt with similarities and buckets.
#[derive(Debug, Clone)]
pub struct PreparedPrompts {
    pub base: PromptTemplate,
    pub prompts: Vec<AugmentedPrompt>,
    pub bucketing: Option<Bucketing>,
}

impl PreparedPrompts {
    /// Named groups a segment draws one prompt from each.
    fn strata(&self, sampling: Sampling) -> Vec<(Stratum, Vec<AugmentedPrompt>)> {
        match sampling {
            Sampling::Bucket => {
                let n = self.bucketing.as_ref().map_or(0, |b| b.bucket_count);
                (0..n)
                    .map(|b| {
                        let members = self
                            .prompts
                            .iter()
                            .filter(|p| p.bucket_index == Some(b))
                            .cloned()
                            .collect();
                        (Stratum::Bucket(b), members)
                    })
                    .collect()
            }
            Sampling::Parametrization => {
                let mut groups: BTreeMap<(crate::augmenters::ProfileKind, String), Vec<AugmentedPrompt>> =
                    BTreeMap::new();
                for p in &self.prompts {
                    groups
                        .entry((p.profile, p.parametrization.key()))
                        .or_default()
                        .push(p.clone());
                }
                groups
                    .into_iter()
                    .map(|((kind, key), members)| (Stratum::Named(format!("{kind}/{key}")), members))
                    .collect()
            }
        }
    }
}

enum Stratum {
    Bucket(usize),
    Named(String),
}

impl Stratum {
    fn sample<'a>(&self, members: &'a [AugmentedPrompt], segment: &str, seed: u64) -> Option<&'a AugmentedPrompt> {
        match self {
            Stratum::Bucket(b) => sample_from_bucket(members, *b, segment, seed),
            Stratum::Named(name) => sample_from_stratum(members, name, segment, seed),
        }
    }
}

/// Build, measure and bucketize the augmented prompt set of every
/// configured base prompt.
pub fn prepare_prompts(
    config: &ExperimentConfig,
    similarity_cache: &SimilarityCache,
    embedder: Option<&dyn EmbeddingProvider>,
) -> Result<Vec<PreparedPrompts>> {
    let catalog = config.prompt_catalog()?;
    let catalogs: CatalogSet = config.catalogs()?;
    if config.buckets.measure == SimilarityMeasure::SemanticInnerProduct && embedder.is_none() {
        return Err(Error::Config(
            "semantic bucketing needs an embedding sidecar".into(),
        ));
    }
    config
        .base_prompts
        .iter()
        .map(|id| {
            let base = catalog.get(id)?.clone();
            let mut prompts = Vec::new();
            for pc in &config.profiles {
                prompts.extend(build_prompt_set(
                    &base,
                    &pc.profile(),
                    &pc.grid(),
                    config.replicates,
                    config.master_seed,
                    &catalogs,
                )?);
            }
            measure_similarities(&mut prompts, &base.text, embedder, similarity_cache)?;
            let bucketing = if prompts.is_empty() {
                None
            } else {
                Some(bucketize(&mut prompts, config.buckets.measure, config.buckets.count)?)
            };
            Ok(PreparedPrompts {
                base,
                prompts,
                bucketing,
            })
        })
        .collect()
}

/// Provenance of the prompts one item is run with, in stable order.
fn prompts_for_item(
    config: &ExperimentConfig,
    prepared: &PreparedPrompts,
    strata: &[(Stratum, Vec<AugmentedPrompt>)],
    item_label: &str,
) -> Vec<PromptProvenance> {
    let mut out = Vec::new();
    if config.include_control {
        out.push(PromptProvenance::base(&prepared.base.id, &prepared.base.text));
    }
    for (stratum, members) in strata {
        if let Some(p) = stratum.sample(members, item_label, config.master_seed) {
            out.push(PromptProvenance::from(p));
        }
    }
    out
}

fn open_similarity_cache(paths: &PathsConfig) -> Result<SimilarityCache> {
    SimilarityCache::open(&paths.similarity_cache)
}

fn comet_needed<'a>(config: &ExperimentConfig, services: Services<'a>) -> Result<Option<&'a SidecarClient>> {
    match (config.comet, services.sidecar) {
        (false, _) => Ok(None),
        (true, Some(s)) => Ok(Some(s)),
        (true, None) => Err(Error::Config("comet = true needs a scoring sidecar".into())),
    }
}

fn done_keys<T: serde::de::DeserializeOwned>(
    config: &ExperimentConfig,
    key: impl Fn(&T) -> String,
) -> Result<BTreeSet<String>> {
    let mut done = existing_keys(&config.paths.output, key)?;
    if !config.retry_failed {
        done.extend(existing_keys(&config.paths.errors_path(), |e: &ErrorRecord| e.key.clone())?);
    }
    Ok(done)
}

fn thread_pool(config: &ExperimentConfig) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(config.max_in_flight)
        .build()
        .map_err(|e| Error::Internal(format!("cannot start worker pool: {e}")))
}

struct TranslationJob {
    key: String,
    lang_pair: LangPair,
    model_id: String,
    segment: Segment,
    prompt: PromptProvenance,
    rendered: String,
}

/// Run the translation experiment, appending to the records file and
/// skipping work already recorded there.
pub fn run_translation_experiment(config: &ExperimentConfig, services: Services<'_>) -> Result<RunSummary> {
    config.validate()?;
    if config.task != Task::Translate {
        return Err(Error::Config("config task is not translate".into()));
    }
    let comet = comet_needed(config, services)?;
    let sim_cache = open_similarity_cache(&config.paths)?;
    let embedder = services.sidecar.map(|s| s as &dyn EmbeddingProvider);
    let prepared = prepare_prompts(config, &sim_cache, embedder)?;
    let done = done_keys(config, TranslationRecord::key)?;

    let mut jobs = Vec::new();
    for &pair in &config.lang_pairs {
        let path = PathsConfig::expand(&config.paths.dataset, pair);
        let segments = load_segments(&path, pair, config.segments_per_pair, config.master_seed)?;
        for prep in &prepared {
            let strata = prep.strata(config.sampling);
            for model in &config.models {
                for seg in &segments.entries {
                    let label = format!("{pair}/{}", seg.segment_id);
                    for prompt in prompts_for_item(config, prep, &strata, &label) {
                        let bindings = translate_bindings(
                            pair.src.english_name(),
                            pair.tgt.english_name(),
                            &seg.source,
                        );
                        let template = PromptTemplate::new(&prep.base.id, Task::Translate, &prompt.template_text);
                        let rendered = render(&template, &bindings)?;
                        jobs.push(TranslationJob {
                            key: translation_key(pair, model, &seg.segment_id, &prompt),
                            lang_pair: pair,
                            model_id: model.clone(),
                            segment: seg.clone(),
                            prompt,
                            rendered,
                        });
                    }
                }
            }
        }
    }
    let planned = jobs.len();
    jobs.retain(|j| !done.contains(&j.key));
    let skipped = planned - jobs.len();
    log::info!("{planned} translation jobs planned, {skipped} already done");

    let mut records = RecordStore::open(&config.paths.output)?;
    let mut errors = RecordStore::open(&config.paths.errors_path())?;
    let pool = thread_pool(config)?;
    let (mut written, mut failed) = (0, 0);
    for chunk in jobs.chunks(CHUNK) {
        let results: Vec<Result<std::result::Result<TranslationRecord, ErrorRecord>>> =
            pool.install(|| chunk.par_iter().map(|job| translate_one(config, services.gateway, job)).collect());
        let mut ok = Vec::new();
        let mut bad = Vec::new();
        for r in results {
            match r? {
                Ok(rec) => ok.push(rec),
                Err(e) => bad.push(e),
            }
        }
        if let Some(sidecar) = comet {
            add_comet(sidecar, &mut ok);
        }
        written += ok.len();
        failed += bad.len();
        records.append(&ok)?;
        errors.append(&bad)?;
    }
    log::info!("wrote {written} records, {failed} failures");
    Ok(RunSummary {
        records_path: config.paths.output.clone(),
        errors_path: config.paths.errors_path(),
        planned,
        skipped,
        written,
        failed,
    })
}

/// Outer error aborts the run; inner error is recorded and the run goes on.
fn translate_one(
    config: &ExperimentConfig,
    gateway: &Gateway,
    job: &TranslationJob,
) -> Result<std::result::Result<TranslationRecord, ErrorRecord>> {
    let mut request = CompletionRequest::new(
        &job.model_id,
        &job.rendered,
        RequestTag::new(&job.key, Task::Translate).with_source(&job.segment.source),
    );
    request.max_tokens = config.max_tokens;
    request.temperature = config.temperature;
    let outcome = gateway.complete(&request).and_then(|resp| {
        TranslationRecord::score(
            TranslationOutcome {
                segment_id: job.segment.segment_id.clone(),
                lang_pair: job.lang_pair,
                model_id: job.model_id.clone(),
                prompt: job.prompt.clone(),
                rendered_prompt: job.rendered.clone(),
                source: job.segment.source.clone(),
                reference: job.segment.reference.clone(),
                raw_output: resp.raw_text,
            },
            config.extraction,
        )
    });
    match outcome {
        Ok(r) => Ok(Ok(r)),
        Err(e @ Error::Config(_)) => Err(e),
        Err(e) => {
            log::warn!("{}: {e}", job.key);
            Ok(Err(ErrorRecord {
                key: job.key.clone(),
                lang_pair: job.lang_pair.to_string(),
                model_id: job.model_id.clone(),
                segment_id: job.segment.segment_id.clone(),
                system_id: None,
                prompt: job.prompt.clone(),
                error: e.to_string(),
            }))
        }
    }
}

fn add_comet(sidecar: &SidecarClient, records: &mut [TranslationRecord]) {
    let (idx, items): (Vec<usize>, Vec<CometItem>) = records
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.extracted_translation.trim().is_empty())
        .map(|(i, r)| {
            (
                i,
                CometItem {
                    src: r.source.clone(),
                    mt: r.extracted_translation.clone(),
                    reference: r.reference.clone(),
                },
            )
        })
        .unzip();
    match sidecar.comet(&items) {
        Ok(scores) => {
            for (i, s) in idx.into_iter().zip(scores) {
                records[i].comet_score = Some(s);
            }
        }
        Err(e) => log::warn!("COMET scoring failed for {} records: {e}", items.len()),
    }
}

/// Recompute a record's scores from its stored raw output.
pub fn rescore_translation(record: &TranslationRecord) -> Result<TranslationRecord> {
    let pair = record.lang_pair;
    let template = PromptTemplate::new(&record.prompt.base_prompt_id, Task::Translate, &record.prompt.template_text);
    let rendered = render(
        &template,
        &translate_bindings(pair.src.english_name(), pair.tgt.english_name(), &record.source),
    )?;
    let mut out = TranslationRecord::score(
        TranslationOutcome {
            segment_id: record.segment_id.clone(),
            lang_pair: pair,
            model_id: record.model_id.clone(),
            prompt: record.prompt.clone(),
            rendered_prompt: rendered,
            source: record.source.clone(),
            reference: record.reference.clone(),
            raw_output: record.raw_output.clone(),
        },
        record.extraction,
    )?;
    out.comet_score = record.comet_score;
    Ok(out)
}

struct QeJob {
    key: String,
    lang_pair: LangPair,
    model_id: String,
    output: SystemOutput,
    prompt: PromptProvenance,
    rendered: String,
    human: Option<f64>,
}

/// Run GEMBA-style QE over system outputs. Scores are parsed strictly: a
/// reply without a usable score counts as 0 and is not retried.
pub fn run_qe_experiment(config: &ExperimentConfig, services: Services<'_>) -> Result<RunSummary> {
    config.validate()?;
    if config.task != Task::Qe {
        return Err(Error::Config("config task is not qe".into()));
    }
    let sim_cache = open_similarity_cache(&config.paths)?;
    let embedder = services.sidecar.map(|s| s as &dyn EmbeddingProvider);
    let prepared = prepare_prompts(config, &sim_cache, embedder)?;
    let done = done_keys(config, QERecord::key)?;

    let mut jobs = Vec::new();
    for &pair in &config.lang_pairs {
        let path = PathsConfig::expand(&config.paths.system_outputs, pair);
        let outputs = load_system_outputs(&path, pair, config.segments_per_pair, config.master_seed)?;
        let human = match &config.paths.human_scores {
            Some(t) => Some(HumanScores::load_csv(&PathsConfig::expand(t, pair))?),
            None => None,
        };
        for prep in &prepared {
            let strata = prep.strata(config.sampling);
            for model in &config.models {
                for out in &outputs {
                    let label = format!("{pair}/{}/{}", out.system_id, out.segment_id);
                    for prompt in prompts_for_item(config, prep, &strata, &label) {
                        let bindings = qe_bindings(
                            pair.src.english_name(),
                            pair.tgt.english_name(),
                            &out.source,
                            &out.translation,
                        );
                        let template = PromptTemplate::new(&prep.base.id, Task::Qe, &prompt.template_text);
                        let rendered = render(&template, &bindings)?;
                        jobs.push(QeJob {
                            key: qe_key(pair, model, &out.system_id, &out.segment_id, &prompt),
                            lang_pair: pair,
                            model_id: model.clone(),
                            output: out.clone(),
                            human: human
                                .as_ref()
                                .and_then(|h| h.segment(&out.system_id, &out.segment_id)),
                            prompt,
                            rendered,
                        });
                    }
                }
            }
        }
    }
    let planned = jobs.len();
    jobs.retain(|j| !done.contains(&j.key));
    let skipped = planned - jobs.len();
    log::info!("{planned} QE jobs planned, {skipped} already done");

    let mut records = RecordStore::open(&config.paths.output)?;
    let mut errors = RecordStore::open(&config.paths.errors_path())?;
    let pool = thread_pool(config)?;
    let (mut written, mut failed) = (0, 0);
    for chunk in jobs.chunks(CHUNK) {
        let results: Vec<Result<std::result::Result<QERecord, ErrorRecord>>> =
            pool.install(|| chunk.par_iter().map(|job| qe_one(config, services.gateway, job)).collect());
        let mut ok = Vec::new();
        let mut bad = Vec::new();
        for r in results {
            match r? {
                Ok(rec) => ok.push(rec),
                Err(e) => bad.push(e),
            }
        }
        written += ok.len();
        failed += bad.len();
        records.append(&ok)?;
        errors.append(&bad)?;
    }
    log::info!("wrote {written} QE records, {failed} failures");
    Ok(RunSummary {
        records_path: config.paths.output.clone(),
        errors_path: config.paths.errors_path(),
        planned,
        skipped,
        written,
        failed,
    })
}

fn qe_one(
    config: &ExperimentConfig,
    gateway: &Gateway,
    job: &QeJob,
) -> Result<std::result::Result<QERecord, ErrorRecord>> {
    let mut request = CompletionRequest::new(
        &job.model_id,
        &job.rendered,
        RequestTag::new(&job.key, Task::Qe).with_source(&job.output.translation),
    );
    request.max_tokens = config.max_tokens;
    request.temperature = config.temperature;
    match gateway.complete(&request) {
        Ok(resp) => {
            let (parsed_score, parse_ok) = parse_gemba(&resp.raw_text);
            Ok(Ok(QERecord {
                segment_id: job.output.segment_id.clone(),
                system_id: job.output.system_id.clone(),
                lang_pair: job.lang_pair,
                model_id: job.model_id.clone(),
                qe_prompt: job.prompt.clone(),
                source: job.output.source.clone(),
                translation: job.output.translation.clone(),
                raw_output: resp.raw_text,
                parsed_score,
                parse_ok,
                human_score: job.human,
            }))
        }
        Err(e @ Error::Config(_)) => Err(e),
        Err(e) => {
            log::warn!("{}: {e}", job.key);
            Ok(Err(ErrorRecord {
                key: job.key.clone(),
                lang_pair: job.lang_pair.to_string(),
                model_id: job.model_id.clone(),
                segment_id: job.output.segment_id.clone(),
                system_id: Some(job.output.system_id.clone()),
                prompt: job.prompt.clone(),
                error: e.to_string(),
            }))
        }
    }
}
