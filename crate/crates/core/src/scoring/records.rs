use serde::{Deserialize, Serialize};

use super::extract::{extract_translation, ExtractMode};
use super::langid::detect_language;
use crate::augmenters::{AugmentedPrompt, Parametrization, ProfileKind};
use crate::error::{Error, Result};
use crate::intensity::chrf_default;
use crate::lang::LangPair;

/// chrF of a system output against its reference, in [0, 100].
///
/// An empty output shares no n-grams with the reference and scores 0.
pub fn score_translation(mt: &str, reference: &str) -> Result<f64> {
    chrf_default(mt, reference)
}

/// Where a rendered prompt came from.
///
/// `profile == None` marks the unperturbed base prompt.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PromptProvenance {
    pub base_prompt_id: String,
    pub profile: Option<ProfileKind>,
    pub parametrization: Parametrization,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant_index: Option<usize>,
    pub seed: u64,
    pub replicate_index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bucket: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub similarity_surface: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub similarity_semantic: Option<f64>,
    pub template_text: String,
}

impl PromptProvenance {
    pub fn base(base_prompt_id: &str, template_text: &str) -> Self {
        Self {
            base_prompt_id: base_prompt_id.to_string(),
            profile: None,
            parametrization: Parametrization::default(),
            variant_index: None,
            seed: 0,
            replicate_index: 0,
            bucket: None,
            similarity_surface: Some(100.0),
            similarity_semantic: Some(1.0),
            template_text: template_text.to_string(),
        }
    }

    pub fn profile_name(&self) -> &'static str {
        self.profile.map_or("base", ProfileKind::as_str)
    }

    /// Correlation point this prompt belongs to; see
    /// [`AugmentedPrompt::point_key`].
    pub fn point_key(&self) -> String {
        match (self.profile.and_then(ProfileKind::char_augmenter), self.variant_index) {
            (None, Some(v)) => format!("{},variant={v}", self.parametrization.key()),
            _ => self.parametrization.key(),
        }
    }

    /// Identity of the prompt within its experiment.
    pub fn key(&self) -> String {
        format!(
            "{}|{}|{}|{}|{}|{}|{}",
            self.base_prompt_id,
            self.profile_name(),
            self.parametrization.key(),
            self.variant_index.map_or("-".to_string(), |v| v.to_string()),
            self.seed,
            self.replicate_index,
            self.bucket.map_or("-".to_string(), |b| b.to_string()),
        )
    }
}

impl From<&AugmentedPrompt> for PromptProvenance {
    fn from(p: &AugmentedPrompt) -> Self {
        Self {
            base_prompt_id: p.base_prompt_id.clone(),
            profile: Some(p.profile),
            parametrization: p.parametrization,
            variant_index: p.variant_index,
            seed: p.seed,
            replicate_index: p.replicate_index,
            bucket: p.bucket_index,
            similarity_surface: p.similarity_surface,
            similarity_semantic: p.similarity_semantic,
            template_text: p.template_text.clone(),
        }
    }
}

/// Resume key of a translation record.
pub fn translation_key(lang_pair: LangPair, model_id: &str, segment_id: &str, prompt: &PromptProvenance) -> String {
    format!("{lang_pair}|{model_id}|{segment_id}|{}", prompt.key())
}

/// Resume key of a QE record.
pub fn qe_key(
    lang_pair: LangPair,
    model_id: &str,
    system_id: &str,
    segment_id: &str,
    prompt: &PromptProvenance,
) -> String {
    format!("{lang_pair}|{model_id}|{system_id}|{segment_id}|{}", prompt.key())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslationRecord {
    pub segment_id: String,
    pub lang_pair: LangPair,
    pub model_id: String,
    pub prompt: PromptProvenance,
    pub source: String,
    pub reference: String,
    pub raw_output: String,
    pub extraction: ExtractMode,
    pub extracted_translation: String,
    pub chrf_score: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comet_score: Option<f64>,
    pub detected_lang: String,
    pub lang_confidence: f64,
    pub on_target: bool,
    pub output_len_chars: usize,
    pub reference_len_chars: usize,
}

/// Inputs to [`TranslationRecord::score`].
#[derive(Debug, Clone)]
pub struct TranslationOutcome {
    pub segment_id: String,
    pub lang_pair: LangPair,
    pub model_id: String,
    pub prompt: PromptProvenance,
    pub rendered_prompt: String,
    pub source: String,
    pub reference: String,
    pub raw_output: String,
}

impl TranslationRecord {
    /// Score a model output: extract, chrF, detect language and measure
    /// lengths. COMET is filled in separately.
    pub fn score(outcome: TranslationOutcome, mode: ExtractMode) -> Result<Self> {
        let extracted = extract_translation(
            &outcome.raw_output,
            outcome.lang_pair.tgt,
            mode,
            Some(&outcome.rendered_prompt),
        );
        let chrf_score = score_translation(&extracted, &outcome.reference)?;
        let (detected_lang, lang_confidence) = if extracted.trim().is_empty() {
            ("other".to_string(), 1.0)
        } else {
            let d = detect_language(&extracted)?;
            (d.code().to_string(), d.confidence)
        };
        let on_target = detected_lang == outcome.lang_pair.tgt.code();
        Ok(Self {
            segment_id: outcome.segment_id,
            lang_pair: outcome.lang_pair,
            model_id: outcome.model_id,
            prompt: outcome.prompt,
            output_len_chars: extracted.chars().count(),
            reference_len_chars: outcome.reference.chars().count(),
            source: outcome.source,
            reference: outcome.reference,
            raw_output: outcome.raw_output,
            extraction: mode,
            extracted_translation: extracted,
            chrf_score,
            comet_score: None,
            detected_lang,
            lang_confidence,
            on_target,
        })
    }

    /// Check the record's internal invariants.
    pub fn check(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Internal(format!("record {}: {m}", self.segment_id)));
        if self.on_target != (self.detected_lang == self.lang_pair.tgt.code()) {
            return fail(format!(
                "on_target={} disagrees with detected_lang={}",
                self.on_target, self.detected_lang
            ));
        }
        if !(0.0..=100.0).contains(&self.chrf_score) {
            return fail(format!("chrF {} outside [0, 100]", self.chrf_score));
        }
        if let Some(c) = self.comet_score {
            if !(0.0..=1.0).contains(&c) {
                return fail(format!("COMET {c} outside [0, 1]"));
            }
        }
        Ok(())
    }

    pub fn key(&self) -> String {
        translation_key(self.lang_pair, &self.model_id, &self.segment_id, &self.prompt)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QERecord {
    pub segment_id: String,
    pub system_id: String,
    pub lang_pair: LangPair,
    pub model_id: String,
    pub qe_prompt: PromptProvenance,
    pub source: String,
    pub translation: String,
    pub raw_output: String,
    pub parsed_score: f64,
    pub parse_ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub human_score: Option<f64>,
}

impl QERecord {
    pub fn check(&self) -> Result<()> {
        if !(0.0..=100.0).contains(&self.parsed_score) || (!self.parse_ok && self.parsed_score != 0.0) {
            return Err(Error::Internal(format!(
                "QE record {}/{}: score {} with parse_ok={}",
                self.system_id, self.segment_id, self.parsed_score, self.parse_ok
            )));
        }
        Ok(())
    }

    pub fn key(&self) -> String {
        qe_key(
            self.lang_pair,
            &self.model_id,
            &self.system_id,
            &self.segment_id,
            &self.qe_prompt,
        )
    }
}
