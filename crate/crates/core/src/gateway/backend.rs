use std::time::Duration;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Deserialize;
use serde_json::json;

use super::request::CompletionRequest;
use crate::rng::{derive_seed, rng_from_seed};

#[derive(Debug, Clone, PartialEq)]
pub struct Completion {
    pub text: String,
    pub finish_reason: Option<String>,
}

/// Failure classes that drive the gateway's retry policy.
#[derive(Debug, Clone, PartialEq)]
pub enum BackendError {
    /// Credentials rejected; never retried.
    Auth(String),
    /// Network trouble, rate limiting or server errors; retried.
    Transient(String),
    /// The provider answered but the answer is unusable; not retried.
    Fatal(String),
}

pub trait Backend: Send + Sync {
    fn complete(&self, request: &CompletionRequest) -> Result<Completion, BackendError>;

    /// Whether this backend reaches the network.
    fn is_remote(&self) -> bool {
        true
    }
}

pub const API_KEY_ENV: &str = "ERRPROMPT_API_KEY";
pub const BASE_URL_ENV: &str = "ERRPROMPT_BASE_URL";
pub const DEFAULT_BASE_URL: &str = "https://api.openai.com";

/// Client for `/v1/chat/completions` on an OpenAI-compatible server.
#[derive(Debug, Clone)]
pub struct OpenAiBackend {
    client: reqwest::blocking::Client,
    endpoint: String,
    api_key: Option<String>,
}

impl OpenAiBackend {
    pub fn new(base_url: &str, api_key: Option<String>, timeout: Duration) -> crate::Result<Self> {
        let client = reqwest::blocking::Client::builder()
            .timeout(timeout)
            .build()
            .map_err(|e| crate::Error::Config(format!("cannot build HTTP client: {e}")))?;
        Ok(Self {
            client,
            endpoint: format!("{}/v1/chat/completions", base_url.trim_end_matches('/')),
            api_key,
        })
    }

    /// Configure from `ERRPROMPT_BASE_URL` and `ERRPROMPT_API_KEY`
    /// (falling back to `OPENAI_API_KEY`).
    pub fn from_env(timeout: Duration) -> crate::Result<Self> {
        let base = std::env::var(BASE_URL_ENV).unwrap_or_else(|_| DEFAULT_BASE_URL.to_string());
        let key = std::env::var(API_KEY_ENV)
            .or_else(|_| std::env::var("OPENAI_API_KEY"))
            .ok()
            .filter(|k| !k.is_empty());
        if key.is_none() && base == DEFAULT_BASE_URL {
            return Err(crate::Error::Config(format!(
                "no API key: set {API_KEY_ENV} or OPENAI_API_KEY"
            )));
        }
        Self::new(&base, key, timeout)
    }

    pub fn endpoint(&self) -> &str {
        &self.endpoint
    }
}

#[derive(Deserialize)]
struct ChatResponse {
    choices: Vec<Choice>,
}

#[derive(Deserialize)]
struct Choice {
    message: Message,
    #[serde(default)]
    finish_reason: Option<String>,
}

#[derive(Deserialize)]
struct Message {
    #[serde(default)]
    content: Option<String>,
}

impl Backend for OpenAiBackend {
    fn complete(&self, request: &CompletionRequest) -> Result<Completion, BackendError> {
        let body = json!({
            "model": request.model_id,
            "messages": [{"role": "user", "content": request.prompt_text}],
            "temperature": request.temperature,
            "max_tokens": request.max_tokens,
        });
        let mut http = self.client.post(&self.endpoint).json(&body);
        if let Some(key) = &self.api_key {
            http = http.bearer_auth(key);
        }
        let resp = http.send().map_err(|e| BackendError::Transient(e.to_string()))?;
        let status = resp.status();
        if status == reqwest::StatusCode::UNAUTHORIZED || status == reqwest::StatusCode::FORBIDDEN {
            return Err(BackendError::Auth(format!("{} returned {status}", self.endpoint)));
        }
        if status == reqwest::StatusCode::TOO_MANY_REQUESTS
            || status == reqwest::StatusCode::REQUEST_TIMEOUT
            || status.is_server_error()
        {
            return Err(BackendError::Transient(format!("{} returned {status}", self.endpoint)));
        }
        if !status.is_success() {
            let text = resp.text().unwrap_or_default();
            return Err(BackendError::Fatal(format!("{} returned {status}: {text}", self.endpoint)));
        }
        let parsed: ChatResponse = resp
            .json()
            .map_err(|e| BackendError::Fatal(format!("unreadable completion body: {e}")))?;
        let choice = parsed
            .choices
            .into_iter()
            .next()
            .ok_or_else(|| BackendError::Fatal("completion has no choices".into()))?;
        Ok(Completion {
            text: choice.message.content.unwrap_or_default(),
            finish_reason: choice.finish_reason,
        })
    }
}

type Responder = dyn Fn(&CompletionRequest) -> String + Send + Sync;

/// Offline backend with deterministic outputs.
///
/// By default it echoes the tagged source text (or the prompt when no
/// source is tagged) with letters inside some words shuffled, seeded by the
/// request's cache key.
pub struct MockBackend {
    responder: Box<Responder>,
}

impl std::fmt::Debug for MockBackend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("MockBackend")
    }
}

impl Default for MockBackend {
    fn default() -> Self {
        Self::echo()
    }
}

impl MockBackend {
    pub fn echo() -> Self {
        Self {
            responder: Box::new(mock_echo),
        }
    }

    pub fn with_responder(f: impl Fn(&CompletionRequest) -> String + Send + Sync + 'static) -> Self {
        Self {
            responder: Box::new(f),
        }
    }
}

/// Shuffle the interior letters of roughly half the words of length > 3.
pub fn mock_echo(request: &CompletionRequest) -> String {
    let text = request
        .tag
        .source_text
        .as_deref()
        .unwrap_or(&request.prompt_text);
    let key = request.cache_key();
    let mut rng = rng_from_seed(derive_seed(0, &["mock-echo".into(), key.as_str().into()]));
    let mut out = String::with_capacity(text.len());
    let mut word: Vec<char> = Vec::new();
    let flush = |word: &mut Vec<char>, out: &mut String, rng: &mut rand_chacha::ChaCha8Rng| {
        if word.len() > 3 && rng.gen_bool(0.5) {
            let n = word.len();
            word[1..n - 1].shuffle(rng);
        }
        out.extend(word.drain(..));
    };
    for c in text.chars() {
        if c.is_alphabetic() {
            word.push(c);
        } else {
            flush(&mut word, &mut out, &mut rng);
            out.push(c);
        }
    }
    flush(&mut word, &mut out, &mut rng);
    out
}

impl Backend for MockBackend {
    fn complete(&self, request: &CompletionRequest) -> Result<Completion, BackendError> {
        Ok(Completion {
            text: (self.responder)(request),
            finish_reason: Some("stop".into()),
        })
    }

    fn is_remote(&self) -> bool {
        false
    }
}
