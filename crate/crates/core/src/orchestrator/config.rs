use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::augmenters::{
    CatalogSet, CharacterErrorSpec, ErrorProfile, Parametrization, ProfileKind,
};
use crate::error::{Error, Result};
use crate::intensity::SimilarityMeasure;
use crate::lang::LangPair;
use crate::prompts::{PromptCatalog, Task};
use crate::scoring::ExtractMode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum BackendKind {
    Live,
    #[default]
    Mock,
}

/// What one segment is paired with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Sampling {
    /// One prompt per intensity bucket.
    #[default]
    Bucket,
    /// One prompt per profile parametrization.
    Parametrization,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileConfig {
    pub kind: ProfileKind,
    /// Error probabilities; defaults to the profile's standard grid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<f64>>,
    /// Catalog levels; defaults to every level of the catalog.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<u8>>,
    /// Character augmenter settings (`p` is taken from the grid).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<CharacterErrorSpec>,
}

impl ProfileConfig {
    pub fn new(kind: ProfileKind) -> Self {
        Self {
            kind,
            p: None,
            levels: None,
            spec: None,
        }
    }

    pub fn profile(&self) -> ErrorProfile {
        let profile = ErrorProfile::new(self.kind);
        match &self.spec {
            Some(spec) if self.kind.char_augmenter().is_some() => profile.with_spec(spec.clone()),
            _ => profile,
        }
    }

    pub fn grid(&self) -> Vec<Parametrization> {
        let default = self.kind.default_grid();
        let ps: Vec<f64> = match &self.p {
            Some(p) => p.clone(),
            None => {
                let mut v: Vec<f64> = default.iter().filter_map(|x| x.p).collect();
                v.dedup();
                v
            }
        };
        let levels: Vec<u8> = match &self.levels {
            Some(l) => l.clone(),
            None => self
                .kind
                .catalog_family()
                .map(|f| f.levels().to_vec())
                .unwrap_or_default(),
        };
        match (self.kind.catalog_family(), self.kind.char_augmenter()) {
            (None, _) => ps.into_iter().map(Parametrization::p).collect(),
            (Some(_), None) => levels.into_iter().map(Parametrization::level).collect(),
            (Some(_), Some(_)) => levels
                .iter()
                .flat_map(|l| ps.iter().map(move |p| Parametrization::p_level(*p, *l)))
                .collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        let kind = self.kind;
        if self.p.is_some() && kind.char_augmenter().is_none() {
            return Err(Error::Config(format!("{kind} takes no p values")));
        }
        if self.levels.is_some() && kind.catalog_family().is_none() {
            return Err(Error::Config(format!("{kind} takes no catalog levels")));
        }
        let grid = self.grid();
        if grid.is_empty() {
            return Err(Error::Config(format!("{kind} has an empty grid")));
        }
        for point in &grid {
            if let Some(p) = point.p {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::Config(format!("{kind}: p = {p} outside [0, 1]")));
                }
            }
            if let (Some(level), Some(family)) = (point.level, kind.catalog_family()) {
                if !family.levels().contains(&level) {
                    return Err(Error::Config(format!(
                        "{kind}: level {level} not in {:?}",
                        family.levels()
                    )));
                }
            }
        }
        if let Some(spec) = &self.spec {
            spec.validate().map_err(|e| Error::Config(format!("{kind}: {e}")))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BucketConfig {
    #[serde(default = "default_bucket_count")]
    pub count: usize,
    #[serde(default)]
    pub measure: SimilarityMeasure,
}

fn default_bucket_count() -> usize {
    10
}

impl Default for BucketConfig {
    fn default() -> Self {
        Self {
            count: default_bucket_count(),
            measure: SimilarityMeasure::default(),
        }
    }
}

/// File locations. `{lang_pair}` in a template expands to e.g. `en-de`;
/// relative paths resolve against the config file's directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathsConfig {
    /// Translation segments, JSONL `{segment_id, source, reference}`.
    #[serde(default = "default_dataset")]
    pub dataset: String,
    /// QE inputs, JSONL `{system_id, segment_id, source, translation}`.
    #[serde(default = "default_system_outputs")]
    pub system_outputs: String,
    /// Human judgments, CSV `system_id,segment_id,score`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub human_scores: Option<String>,
    #[serde(default = "default_cache")]
    pub cache: PathBuf,
    #[serde(default = "default_similarity_cache")]
    pub similarity_cache: PathBuf,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    /// Prompt catalog JSONL; the bundled prompts when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prompts: Option<PathBuf>,
    /// Directory with phonetic/phrasal/register JSONL catalogs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalogs: Option<PathBuf>,
}

fn default_dataset() -> String {
    "data/{lang_pair}.jsonl".into()
}
fn default_system_outputs() -> String {
    "data/{lang_pair}.systems.jsonl".into()
}
fn default_cache() -> PathBuf {
    "out/cache.jsonl".into()
}
fn default_similarity_cache() -> PathBuf {
    "out/similarity.jsonl".into()
}
fn default_output() -> PathBuf {
    "out/records.jsonl".into()
}

impl Default for PathsConfig {
    fn default() -> Self {
        Self {
            dataset: default_dataset(),
            system_outputs: default_system_outputs(),
            human_scores: None,
            cache: default_cache(),
            similarity_cache: default_similarity_cache(),
            output: default_output(),
            prompts: None,
            catalogs: None,
        }
    }
}

impl PathsConfig {
    pub fn expand(template: &str, pair: LangPair) -> PathBuf {
        PathBuf::from(template.replace("{lang_pair}", &pair.to_string()))
    }

    fn rebase(&mut self, dir: &Path) {
        let join = |p: &Path| if p.is_relative() { dir.join(p) } else { p.to_path_buf() };
        let join_str = |s: &str| {
            if Path::new(s).is_relative() {
                dir.join(s).to_string_lossy().into_owned()
            } else {
                s.to_string()
            }
        };
        self.dataset = join_str(&self.dataset);
        self.system_outputs = join_str(&self.system_outputs);
        self.human_scores = self.human_scores.as_deref().map(join_str);
        self.cache = join(&self.cache);
        self.similarity_cache = join(&self.similarity_cache);
        self.output = join(&self.output);
        self.prompts = self.prompts.as_deref().map(join);
        self.catalogs = self.catalogs.as_deref().map(join);
    }

    /// Companion file holding failed requests.
    pub fn errors_path(&self) -> PathBuf {
        let mut name = self
            .output
            .file_stem()
            .map(|s| s.to_os_string())
            .unwrap_or_default();
        name.push(".errors.jsonl");
        self.output.with_file_name(name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub task: Task,
    /// Root of every random choice in the experiment.
    pub master_seed: u64,
    pub lang_pairs: Vec<LangPair>,
    pub models: Vec<String>,
    pub base_prompts: Vec<String>,
    #[serde(default)]
    pub profiles: Vec<ProfileConfig>,
    #[serde(default = "default_replicates")]
    pub replicates: usize,
    #[serde(default = "default_segments")]
    pub segments_per_pair: usize,
    #[serde(default)]
    pub buckets: BucketConfig,
    #[serde(default)]
    pub sampling: Sampling,
    /// Also run every segment with the unperturbed base prompt.
    #[serde(default)]
    pub include_control: bool,
    #[serde(default)]
    pub backend: BackendKind,
    #[serde(default = "default_in_flight")]
    pub max_in_flight: usize,
    #[serde(default = "default_max_tokens")]
    pub max_tokens: u32,
    #[serde(default)]
    pub temperature: f64,
    #[serde(default)]
    pub extraction: ExtractMode,
    /// Score outputs with COMET when a sidecar is available.
    #[serde(default)]
    pub comet: bool,
    /// Re-attempt requests that failed in an earlier run.
    #[serde(default)]
    pub retry_failed: bool,
    #[serde(default)]
    pub paths: PathsConfig,
}

fn default_replicates() -> usize {
    20
}
fn default_segments() -> usize {
    500
}
fn default_in_flight() -> usize {
    8
}
fn default_max_tokens() -> u32 {
    512
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Read a TOML config; relative paths resolve against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let mut config = Self::parse(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let dir = path.parent().unwrap_or(Path::new("."));
        config.paths.rebase(dir);
        Ok(config)
    }

    pub fn prompt_catalog(&self) -> Result<PromptCatalog> {
        match &self.paths.prompts {
            Some(p) => PromptCatalog::load(p),
            None => Ok(PromptCatalog::builtin()),
        }
    }

    pub fn catalogs(&self) -> Result<CatalogSet> {
        match &self.paths.catalogs {
            Some(dir) => CatalogSet::load_dir(dir),
            None => Ok(CatalogSet::builtin()),
        }
    }

    /// Check the whole config, returning every problem found.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.segments_per_pair == 0 {
            out.push("segments_per_pair must be at least 1".into());
        }
        if self.replicates == 0 {
            out.push("replicates must be at least 1".into());
        }
        if self.lang_pairs.is_empty() {
            out.push("no lang_pairs".into());
        }
        if self.models.is_empty() {
            out.push("no models".into());
        }
        if self.models.iter().any(String::is_empty) {
            out.push("empty model id".into());
        }
        if self.base_prompts.is_empty() {
            out.push("no base_prompts".into());
        }
        if self.profiles.is_empty() && !self.include_control {
            out.push("no profiles and include_control is false: nothing to run".into());
        }
        if self.buckets.count < 2 {
            out.push("buckets.count must be at least 2".into());
        }
        if !(self.temperature >= 0.0) {
            out.push(format!("temperature {} is negative", self.temperature));
        }
        if self.max_in_flight == 0 {
            out.push("max_in_flight must be at least 1".into());
        }
        let mut kinds: Vec<ProfileKind> = self.profiles.iter().map(|p| p.kind).collect();
        kinds.sort();
        if kinds.windows(2).any(|w| w[0] == w[1]) {
            out.push("a profile is listed twice".into());
        }
        for p in &self.profiles {
            if let Err(e) = p.validate() {
                out.push(e.to_string());
            }
        }
        let prompts = match self.prompt_catalog() {
            Ok(c) => c,
            Err(e) => {
                out.push(format!("prompt catalog: {e}"));
                return out;
            }
        };
        let catalogs = match self.catalogs() {
            Ok(c) => c,
            Err(e) => {
                out.push(format!("variant catalogs: {e}"));
                return out;
            }
        };
        for id in &self.base_prompts {
            let template = match prompts.get(id) {
                Ok(t) => t,
                Err(e) => {
                    out.push(e.to_string());
                    continue;
                }
            };
            if template.task != self.task {
                out.push(format!("prompt {id} is a {:?} prompt, experiment is {:?}", template.task, self.task));
            }
            for v in template.validate() {
                out.push(format!("prompt {id}: {v}"));
            }
            for p in &self.profiles {
                let Some(family) = p.kind.catalog_family() else {
                    continue;
                };
                for point in p.grid() {
                    if let Err(e) = catalogs.get(family).variants(id, point.level) {
                        out.push(format!("{} on {id}: {e}", p.kind));
                        break;
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let problems = self.problems();
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(problems.join("; ")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
task = "translate"
master_seed = 7
lang_pairs = ["en-de"]
models = ["mock-1"]
base_prompts = ["prompt3"]

[[profiles]]
kind = "orthographic"
p = [0.1, 0.2]

[[profiles]]
kind = "l2"
levels = [1]
p = [0.04]
"#;

    #[test]
    fn parses_with_defaults() {
        let c = ExperimentConfig::parse(MINIMAL).unwrap();
        assert_eq!(c.replicates, 20);
        assert_eq!(c.segments_per_pair, 500);
        assert_eq!(c.backend, BackendKind::Mock);
        assert_eq!(c.temperature, 0.0);
        assert_eq!(c.profiles[1].grid(), vec![Parametrization::p_level(0.04, 1)]);
        c.validate().unwrap();
    }

    #[test]
    fn seed_is_mandatory() {
        let text = MINIMAL.replace("master_seed = 7\n", "");
        assert!(matches!(ExperimentConfig::parse(&text), Err(Error::Config(_))));
    }

    #[test]
    fn reports_problems() {
        let mut c = ExperimentConfig::parse(MINIMAL).unwrap();
        c.segments_per_pair = 0;
        c.base_prompts.push("nope".into());
        c.profiles.push(ProfileConfig {
            p: Some(vec![1.5]),
            ..ProfileConfig::new(ProfileKind::Uniform)
        });
        let problems = c.problems();
        assert_eq!(problems.len(), 3, "{problems:?}");
    }

    #[test]
    fn catalog_profiles_need_entries() {
        let text = MINIMAL
            .replace("task = \"translate\"", "task = \"qe\"")
            .replace("\"prompt3\"", "\"qe1\"");
        let c = ExperimentConfig::parse(&text).unwrap();
        let problems = c.problems();
        assert!(problems.iter().any(|p| p.starts_with("l2 on qe1")), "{problems:?}");
    }

    #[test]
    fn errors_file_sits_next_to_output() {
        let p = PathsConfig {
            output: "out/run.jsonl".into(),
            ..PathsConfig::default()
        };
        assert_eq!(p.errors_path(), PathBuf::from("out/run.errors.jsonl"));
    }
}
