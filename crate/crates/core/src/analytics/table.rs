use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::stats::{pearson, stable_mean};
use crate::augmenters::ProfileKind;
use crate::error::{Error, Result};
use crate::intensity::SimilarityMeasure;
use crate::scoring::TranslationRecord;

pub const ALL_PROMPTS: &str = "All prompts";
pub const ALL_PROFILES: &str = "All error augmenters";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QualityMetric {
    #[default]
    Chrf,
    Comet,
}

impl QualityMetric {
    pub fn of(self, r: &TranslationRecord) -> Option<f64> {
        match self {
            QualityMetric::Chrf => Some(r.chrf_score),
            QualityMetric::Comet => r.comet_score,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            QualityMetric::Chrf => "chrf",
            QualityMetric::Comet => "comet",
        }
    }
}

impl fmt::Display for QualityMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How records become correlation points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointAggregation {
    /// One point per parametrization: mean similarity and mean quality over
    /// models, languages and segments.
    #[default]
    Parametrization,
    /// One point per record.
    Record,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TableOptions {
    pub quality: QualityMetric,
    pub similarity: SimilarityMeasure,
    pub aggregation: PointAggregation,
}

pub(crate) fn similarity_of(r: &TranslationRecord, measure: SimilarityMeasure) -> Option<f64> {
    match measure {
        SimilarityMeasure::SurfaceChrf => r.prompt.similarity_surface,
        SimilarityMeasure::SemanticInnerProduct => r.prompt.similarity_semantic,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationPoint {
    pub key: String,
    pub similarity: f64,
    pub quality: f64,
    pub n_records: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationCell {
    pub error_profile: String,
    pub base_prompt_id: String,
    pub points: Vec<CorrelationPoint>,
    /// `None` when fewer than two points or a constant coordinate.
    pub r: Option<f64>,
    pub n_points: usize,
}

impl CorrelationCell {
    fn new(error_profile: &str, base_prompt_id: &str, points: Vec<CorrelationPoint>) -> Self {
        let x: Vec<f64> = points.iter().map(|p| p.similarity).collect();
        let y: Vec<f64> = points.iter().map(|p| p.quality).collect();
        Self {
            error_profile: error_profile.to_string(),
            base_prompt_id: base_prompt_id.to_string(),
            r: pearson(&x, &y).ok(),
            n_points: points.len(),
            points,
        }
    }

    pub fn is_margin(&self) -> bool {
        self.error_profile == ALL_PROFILES || self.base_prompt_id == ALL_PROMPTS
    }
}

/// Error type × prompt grid of correlations, with pooled margins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationTable {
    pub options: TableOptions,
    pub profiles: Vec<String>,
    pub prompts: Vec<String>,
    /// Row-major over `profiles + [ALL_PROFILES]` × `prompts + [ALL_PROMPTS]`.
    pub cells: Vec<CorrelationCell>,
}

impl CorrelationTable {
    pub fn cell(&self, profile: &str, prompt: &str) -> Option<&CorrelationCell> {
        self.cells
            .iter()
            .find(|c| c.error_profile == profile && c.base_prompt_id == prompt)
    }

    pub fn row_labels(&self) -> Vec<&str> {
        self.profiles.iter().map(String::as_str).chain([ALL_PROFILES]).collect()
    }

    pub fn column_labels(&self) -> Vec<&str> {
        self.prompts.iter().map(String::as_str).chain([ALL_PROMPTS]).collect()
    }
}

/// Build per-(profile, prompt) correlations between prompt similarity and
/// output quality. Records of the unperturbed base prompt are ignored.
///
/// Margins pool the points of the defined cells in their row or column;
/// the corner pools every defined cell.
pub fn correlation_table(records: &[TranslationRecord], options: TableOptions) -> Result<CorrelationTable> {
    // (profile, prompt) -> point key -> (similarities, qualities)
    type Acc = BTreeMap<String, (Vec<f64>, Vec<f64>)>;
    let mut groups: BTreeMap<(ProfileKind, String), Acc> = BTreeMap::new();
    for r in records {
        let Some(profile) = r.prompt.profile else {
            continue;
        };
        let s = similarity_of(r, options.similarity).ok_or_else(|| {
            Error::input(format!("record {} lacks {} similarity", r.key(), options.similarity))
        })?;
        let q = options.quality.of(r).ok_or_else(|| {
            Error::input(format!("record {} lacks a {} score", r.key(), options.quality))
        })?;
        let point = match options.aggregation {
            PointAggregation::Parametrization => r.prompt.point_key(),
            PointAggregation::Record => r.key(),
        };
        let slot = groups
            .entry((profile, r.prompt.base_prompt_id.clone()))
            .or_default()
            .entry(point)
            .or_default();
        slot.0.push(s);
        slot.1.push(q);
    }

    let mut profiles: Vec<String> = groups.keys().map(|(p, _)| p.as_str().to_string()).collect();
    profiles.dedup();
    let mut prompts: Vec<String> = groups.keys().map(|(_, p)| p.clone()).collect();
    prompts.sort();
    prompts.dedup();

    let mut inner: BTreeMap<(String, String), CorrelationCell> = BTreeMap::new();
    for ((profile, prompt), acc) in groups {
        let points = acc
            .into_iter()
            .map(|(key, (mut s, mut q))| CorrelationPoint {
                key,
                n_records: s.len(),
                similarity: stable_mean(&mut s),
                quality: stable_mean(&mut q),
            })
            .collect();
        let cell = CorrelationCell::new(profile.as_str(), &prompt, points);
        inner.insert((profile.as_str().to_string(), prompt), cell);
    }

    let pooled = |filter: &dyn Fn(&CorrelationCell) -> bool| -> Vec<CorrelationPoint> {
        inner
            .values()
            .filter(|c| c.r.is_some() && filter(c))
            .flat_map(|c| {
                c.points.iter().map(move |p| CorrelationPoint {
                    key: format!("{}/{}/{}", c.error_profile, c.base_prompt_id, p.key),
                    ..p.clone()
                })
            })
            .collect()
    };

    let mut cells = Vec::new();
    for profile in &profiles {
        for prompt in &prompts {
            let cell = inner
                .get(&(profile.clone(), prompt.clone()))
                .cloned()
                .unwrap_or_else(|| CorrelationCell::new(profile, prompt, Vec::new()));
            cells.push(cell);
        }
        let points = pooled(&|c| &c.error_profile == profile);
        cells.push(CorrelationCell::new(profile, ALL_PROMPTS, points));
    }
    for prompt in &prompts {
        let points = pooled(&|c| &c.base_prompt_id == prompt);
        cells.push(CorrelationCell::new(ALL_PROFILES, prompt, points));
    }
    cells.push(CorrelationCell::new(ALL_PROFILES, ALL_PROMPTS, pooled(&|_| true)));

    Ok(CorrelationTable {
        options,
        profiles,
        prompts,
        cells,
    })
}
