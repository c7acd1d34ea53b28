use std::sync::Arc;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::limiter::Limiter;
use crate::error::{Error, Result};
use crate::intensity::EmbeddingProvider;

pub const SIDECAR_URL_ENV: &str = "ERRPROMPT_SIDECAR_URL";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CometItem {
    pub src: String,
    pub mt: String,
    #[serde(rename = "ref")]
    pub reference: String,
}

#[derive(Deserialize)]
struct EmbedResponse {
    vectors: Vec<Vec<f64>>,
    dim: usize,
}

#[derive(Deserialize)]
struct CometResponse {
    scores: Vec<f64>,
}

/// HTTP client for the embedding and COMET scoring service.
#[derive(Debug, Clone)]
pub struct SidecarClient {
    client: reqwest::blocking::Client,
    base_url: String,
    limiter: Option<Arc<Limiter>>,
}

impl SidecarClient {
    pub fn new(base_url: &str, timeout: Duration) -> Result<Self> {
        let client = reqwest::blocking::Client::builder()
            .timeout(timeout)
            .build()
            .map_err(|e| Error::Config(format!("cannot build HTTP client: {e}")))?;
        Ok(Self {
            client,
            base_url: base_url.trim_end_matches('/').to_string(),
            limiter: None,
        })
    }

    /// Client for `ERRPROMPT_SIDECAR_URL`, or `None` when it is unset.
    pub fn from_env(timeout: Duration) -> Result<Option<Self>> {
        match std::env::var(SIDECAR_URL_ENV) {
            Ok(url) if !url.is_empty() => Self::new(&url, timeout).map(Some),
            _ => Ok(None),
        }
    }

    /// Share a concurrency bound with other outbound traffic.
    pub fn with_limiter(mut self, limiter: Arc<Limiter>) -> Self {
        self.limiter = Some(limiter);
        self
    }

    pub fn healthy(&self) -> bool {
        let _permit = self.limiter.as_deref().map(Limiter::acquire);
        self.client
            .get(format!("{}/healthz", self.base_url))
            .send()
            .map(|r| r.status().is_success())
            .unwrap_or(false)
    }

    fn post<T: for<'de> Deserialize<'de>>(&self, path: &str, body: serde_json::Value) -> Result<T> {
        let _permit = self.limiter.as_deref().map(Limiter::acquire);
        let url = format!("{}{path}", self.base_url);
        let resp = self
            .client
            .post(&url)
            .json(&body)
            .send()
            .map_err(|e| Error::Transport {
                tag: url.clone(),
                attempts: 1,
                message: e.to_string(),
            })?;
        let status = resp.status();
        if !status.is_success() {
            let text = resp.text().unwrap_or_default();
            return Err(Error::ProviderContract(format!("{url} returned {status}: {text}")));
        }
        resp.json()
            .map_err(|e| Error::ProviderContract(format!("{url}: unreadable body: {e}")))
    }

    /// COMET scores, one per item, each in [0, 1].
    pub fn comet(&self, items: &[CometItem]) -> Result<Vec<f64>> {
        if items.is_empty() {
            return Ok(Vec::new());
        }
        if let Some(bad) = items
            .iter()
            .find(|i| i.src.is_empty() || i.mt.is_empty() || i.reference.is_empty())
        {
            return Err(Error::input(format!("COMET item with an empty field: {bad:?}")));
        }
        let resp: CometResponse = self.post("/comet", json!({ "items": items }))?;
        if resp.scores.len() != items.len() {
            return Err(Error::ProviderContract(format!(
                "asked for {} COMET scores, got {}",
                items.len(),
                resp.scores.len()
            )));
        }
        if let Some(s) = resp.scores.iter().find(|s| !(0.0..=1.0).contains(*s)) {
            return Err(Error::ProviderContract(format!("COMET score {s} outside [0, 1]")));
        }
        Ok(resp.scores)
    }
}

impl EmbeddingProvider for SidecarClient {
    fn embed(&self, texts: &[String]) -> Result<Vec<Vec<f64>>> {
        if texts.is_empty() {
            return Err(Error::input("nothing to embed"));
        }
        let resp: EmbedResponse = self.post("/embed", json!({ "texts": texts }))?;
        if resp.vectors.len() != texts.len() {
            return Err(Error::ProviderContract(format!(
                "asked for {} embeddings, got {}",
                texts.len(),
                resp.vectors.len()
            )));
        }
        if let Some(v) = resp.vectors.iter().find(|v| v.len() != resp.dim) {
            return Err(Error::ProviderContract(format!(
                "embedding of length {} but dim is {}",
                v.len(),
                resp.dim
            )));
        }
        Ok(resp.vectors)
    }
}
