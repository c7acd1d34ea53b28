use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::stats::{pearson, stable_mean};
use crate::error::{Error, Result};
use crate::scoring::QERecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetaLevel {
    System,
    Segment,
}

/// Human judgments keyed by system and segment.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct HumanScores {
    segments: BTreeMap<(String, String), f64>,
}

#[derive(Deserialize)]
struct Row {
    system_id: String,
    segment_id: String,
    score: f64,
}

impl HumanScores {
    pub fn insert(&mut self, system_id: &str, segment_id: &str, score: f64) {
        self.segments
            .insert((system_id.to_string(), segment_id.to_string()), score);
    }

    /// Read a `system_id,segment_id,score` CSV with a header row.
    pub fn load_csv(path: &Path) -> Result<Self> {
        let mut reader = csv::Reader::from_path(path)?;
        let mut out = Self::default();
        for (i, row) in reader.deserialize::<Row>().enumerate() {
            let row = row.map_err(|e| Error::Malformed {
                path: path.to_path_buf(),
                line: i + 2,
                message: e.to_string(),
            })?;
            if !row.score.is_finite() {
                return Err(Error::Malformed {
                    path: path.to_path_buf(),
                    line: i + 2,
                    message: format!("score {} is not finite", row.score),
                });
            }
            out.insert(&row.system_id, &row.segment_id, row.score);
        }
        Ok(out)
    }

    pub fn segment(&self, system_id: &str, segment_id: &str) -> Option<f64> {
        self.segments
            .get(&(system_id.to_string(), segment_id.to_string()))
            .copied()
    }

    /// Mean human score over all of a system's judged segments.
    pub fn system(&self, system_id: &str) -> Option<f64> {
        let mut v: Vec<f64> = self
            .segments
            .range((system_id.to_string(), String::new())..)
            .take_while(|((s, _), _)| s == system_id)
            .map(|(_, score)| *score)
            .collect();
        (!v.is_empty()).then(|| stable_mean(&mut v))
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BucketCorrelation {
    pub bucket: Option<usize>,
    pub n: usize,
    pub r: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QEMetaResult {
    pub level: MetaLevel,
    pub qe_prompt_id: String,
    pub per_bucket: Vec<BucketCorrelation>,
    /// Correlation over all of this prompt's records.
    pub r: Option<f64>,
    pub n: usize,
}

/// Points to correlate: one per system (mean parsed score vs human system
/// score) or one per judged segment. Failed parses count as 0.
fn points(records: &[&QERecord], human: &HumanScores, level: MetaLevel) -> (Vec<f64>, Vec<f64>) {
    match level {
        MetaLevel::Segment => {
            let mut pairs: Vec<(String, f64, f64)> = records
                .iter()
                .filter_map(|r| {
                    human
                        .segment(&r.system_id, &r.segment_id)
                        .map(|h| (r.key(), r.parsed_score, h))
                })
                .collect();
            pairs.sort_by(|a, b| a.0.cmp(&b.0));
            pairs.into_iter().map(|(_, x, y)| (x, y)).unzip()
        }
        MetaLevel::System => {
            let mut per_system: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
            for r in records {
                per_system.entry(&r.system_id).or_default().push(r.parsed_score);
            }
            per_system
                .into_iter()
                .filter_map(|(system, mut scores)| human.system(system).map(|h| (stable_mean(&mut scores), h)))
                .unzip()
        }
    }
}

/// Correlate parsed QE scores with human judgments, per QE base prompt and
/// per intensity bucket.
pub fn qe_meta_eval(records: &[QERecord], human: &HumanScores, level: MetaLevel) -> Vec<QEMetaResult> {
    let prompts: BTreeSet<&str> = records.iter().map(|r| r.qe_prompt.base_prompt_id.as_str()).collect();
    prompts
        .into_iter()
        .map(|prompt| {
            let mine: Vec<&QERecord> = records
                .iter()
                .filter(|r| r.qe_prompt.base_prompt_id == prompt)
                .collect();
            let buckets: BTreeSet<Option<usize>> = mine.iter().map(|r| r.qe_prompt.bucket).collect();
            let per_bucket = buckets
                .into_iter()
                .map(|bucket| {
                    let subset: Vec<&QERecord> =
                        mine.iter().copied().filter(|r| r.qe_prompt.bucket == bucket).collect();
                    let (x, y) = points(&subset, human, level);
                    BucketCorrelation {
                        bucket,
                        n: x.len(),
                        r: pearson(&x, &y).ok(),
                    }
                })
                .collect();
            let (x, y) = points(&mine, human, level);
            QEMetaResult {
                level,
                qe_prompt_id: prompt.to_string(),
                per_bucket,
                r: pearson(&x, &y).ok(),
                n: x.len(),
            }
        })
        .collect()
}
