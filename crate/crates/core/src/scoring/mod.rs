//! Output scoring: chrF, language identification, GEMBA score parsing.

mod extract;
mod gemba;
mod langid;
mod records;

pub use extract::{extract_translation, ExtractMode};
pub use gemba::parse_gemba;
pub use langid::{detect_language, Detection, LanguageDetector};
pub use records::{
    qe_key, score_translation, translation_key, PromptProvenance, QERecord, TranslationOutcome,
    TranslationRecord,
};
