use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::prompts::Task;

/// Identifies a request in logs and error records. Not part of the cache key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RequestTag {
    pub label: String,
    pub task: Task,
    /// Source segment, echoed by the mock backend.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_text: Option<String>,
}

impl RequestTag {
    pub fn new(label: impl Into<String>, task: Task) -> Self {
        Self {
            label: label.into(),
            task,
            source_text: None,
        }
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source_text = Some(source.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompletionRequest {
    pub model_id: String,
    pub prompt_text: String,
    pub max_tokens: u32,
    pub temperature: f64,
    pub tag: RequestTag,
}

impl CompletionRequest {
    pub fn new(model_id: impl Into<String>, prompt_text: impl Into<String>, tag: RequestTag) -> Self {
        Self {
            model_id: model_id.into(),
            prompt_text: prompt_text.into(),
            max_tokens: 512,
            temperature: 0.0,
            tag,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.prompt_text.is_empty() {
            return Err(Error::input(format!("{}: empty prompt", self.tag.label)));
        }
        if !(self.temperature >= 0.0) {
            return Err(Error::input(format!(
                "{}: temperature {} is negative",
                self.tag.label, self.temperature
            )));
        }
        if self.model_id.is_empty() {
            return Err(Error::input(format!("{}: empty model id", self.tag.label)));
        }
        Ok(())
    }

    /// Hex SHA-256 over model, prompt, max_tokens and temperature.
    pub fn cache_key(&self) -> String {
        let mut h = Sha256::new();
        for field in [self.model_id.as_bytes(), self.prompt_text.as_bytes()] {
            h.update((field.len() as u64).to_le_bytes());
            h.update(field);
        }
        h.update(self.max_tokens.to_le_bytes());
        h.update(self.temperature.to_bits().to_le_bytes());
        hex::encode(h.finalize())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompletionResponse {
    pub raw_text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finish_reason: Option<String>,
    #[serde(skip)]
    pub latency_ms: u64,
    #[serde(skip)]
    pub from_cache: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(prompt: &str) -> CompletionRequest {
        CompletionRequest::new("m", prompt, RequestTag::new("t", Task::Translate))
    }

    #[test]
    fn cache_key_ignores_tag_only() {
        let a = req("hello");
        let mut b = a.clone();
        b.tag = RequestTag::new("other", Task::Qe).with_source("x");
        assert_eq!(a.cache_key(), b.cache_key());
        let mut c = a.clone();
        c.max_tokens = 10;
        assert_ne!(a.cache_key(), c.cache_key());
        let mut d = a.clone();
        d.temperature = 0.5;
        assert_ne!(a.cache_key(), d.cache_key());
        // field boundaries are length-prefixed
        let e = CompletionRequest::new("mh", "ello", a.tag.clone());
        assert_ne!(a.cache_key(), e.cache_key());
    }

    #[test]
    fn validation() {
        assert!(req("").validate().is_err());
        let mut r = req("x");
        r.temperature = -0.1;
        assert!(r.validate().is_err());
        r.temperature = f64::NAN;
        assert!(r.validate().is_err());
        assert!(req("x").validate().is_ok());
    }
}
