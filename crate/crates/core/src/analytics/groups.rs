use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::stats::stable_mean;
use crate::scoring::TranslationRecord;

/// Dimensions to group records by; unselected dimensions are pooled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupBy {
    pub model: bool,
    pub lang_pair: bool,
    pub bucket: bool,
    pub profile: bool,
    pub prompt: bool,
}

impl Default for GroupBy {
    /// Model × language pair × intensity bucket.
    fn default() -> Self {
        Self {
            model: true,
            lang_pair: true,
            bucket: true,
            profile: false,
            prompt: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupKey {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model_id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lang_pair: Option<String>,
    /// `Some(None)` groups records without a bucket (the base prompt).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bucket: Option<Option<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_prompt_id: Option<String>,
}

impl GroupKey {
    fn of(r: &TranslationRecord, by: GroupBy) -> Self {
        Self {
            model_id: by.model.then(|| r.model_id.clone()),
            lang_pair: by.lang_pair.then(|| r.lang_pair.to_string()),
            bucket: by.bucket.then_some(r.prompt.bucket),
            profile: by.profile.then(|| r.prompt.profile_name().to_string()),
            base_prompt_id: by.prompt.then(|| r.prompt.base_prompt_id.clone()),
        }
    }

    /// Column values in fixed order, blank for pooled dimensions.
    pub fn columns(&self) -> [String; 5] {
        [
            self.model_id.clone().unwrap_or_default(),
            self.lang_pair.clone().unwrap_or_default(),
            match self.bucket {
                Some(Some(b)) => b.to_string(),
                Some(None) => "base".to_string(),
                None => String::new(),
            },
            self.profile.clone().unwrap_or_default(),
            self.base_prompt_id.clone().unwrap_or_default(),
        ]
    }

    pub const COLUMN_NAMES: [&'static str; 5] = ["model_id", "lang_pair", "bucket", "profile", "base_prompt_id"];
}

pub(crate) fn group<'a>(
    records: &'a [TranslationRecord],
    by: GroupBy,
) -> BTreeMap<GroupKey, Vec<&'a TranslationRecord>> {
    let mut out: BTreeMap<GroupKey, Vec<&TranslationRecord>> = BTreeMap::new();
    for r in records {
        out.entry(GroupKey::of(r, by)).or_default().push(r);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OnTargetRate {
    pub group: GroupKey,
    pub n: usize,
    pub on_target: usize,
    pub rate: f64,
}

/// Fraction of outputs detected in the target language, per group.
pub fn on_target_rate(records: &[TranslationRecord], by: GroupBy) -> Vec<OnTargetRate> {
    group(records, by)
        .into_iter()
        .map(|(group, rs)| {
            let hits = rs.iter().filter(|r| r.on_target).count();
            OnTargetRate {
                group,
                n: rs.len(),
                on_target: hits,
                rate: hits as f64 / rs.len() as f64,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LengthStats {
    pub group: GroupKey,
    pub n: usize,
    pub mean_output_len: f64,
    pub mean_reference_len: f64,
    /// Mean output length over mean reference length.
    pub ratio: f64,
}

/// Mean output and reference lengths in characters, per group.
pub fn length_stats(records: &[TranslationRecord], by: GroupBy) -> Vec<LengthStats> {
    group(records, by)
        .into_iter()
        .map(|(group, rs)| {
            let mut out: Vec<f64> = rs.iter().map(|r| r.output_len_chars as f64).collect();
            let mut refs: Vec<f64> = rs.iter().map(|r| r.reference_len_chars as f64).collect();
            let mean_output_len = stable_mean(&mut out);
            let mean_reference_len = stable_mean(&mut refs);
            LengthStats {
                group,
                n: rs.len(),
                mean_output_len,
                mean_reference_len,
                ratio: if mean_reference_len > 0.0 {
                    mean_output_len / mean_reference_len
                } else {
                    f64::NAN
                },
            }
        })
        .collect()
}
