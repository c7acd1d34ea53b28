//! Chat-completion access with caching, bounded parallelism and retries.

mod backend;
mod cache;
mod limiter;
mod request;
mod sidecar;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

pub use backend::{
    mock_echo, Backend, BackendError, Completion, MockBackend, OpenAiBackend, API_KEY_ENV,
    BASE_URL_ENV, DEFAULT_BASE_URL,
};
pub use cache::ResponseCache;
pub use limiter::{Limiter, Permit};
pub use request::{CompletionRequest, CompletionResponse, RequestTag};
pub use sidecar::{CometItem, SidecarClient, SIDECAR_URL_ENV};

use crate::error::{Error, Result};
use crate::prompts::Task;

#[derive(Debug, Clone, PartialEq)]
pub struct RetryPolicy {
    /// Total attempts for transport failures, including the first.
    pub max_attempts: u32,
    pub base_delay: Duration,
    pub max_delay: Duration,
    /// Extra attempts when a translation comes back empty. QE requests are
    /// never retried on content.
    pub content_retries: u32,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        Self {
            max_attempts: 5,
            base_delay: Duration::from_millis(500),
            max_delay: Duration::from_secs(30),
            content_retries: 1,
        }
    }
}

impl RetryPolicy {
    pub fn delay(&self, failed_attempts: u32) -> Duration {
        let factor = 2u32.saturating_pow(failed_attempts.saturating_sub(1));
        self.base_delay.saturating_mul(factor).min(self.max_delay)
    }
}

/// Shared entry point for completions; safe to use from many threads.
pub struct Gateway {
    backend: Box<dyn Backend>,
    cache: ResponseCache,
    limiter: Arc<Limiter>,
    retry: RetryPolicy,
    backend_calls: AtomicUsize,
}

impl Gateway {
    pub fn new(backend: Box<dyn Backend>, cache: ResponseCache, max_in_flight: usize) -> Self {
        Self {
            backend,
            cache,
            limiter: Arc::new(Limiter::new(max_in_flight)),
            retry: RetryPolicy::default(),
            backend_calls: AtomicUsize::new(0),
        }
    }

    pub fn with_retry(mut self, retry: RetryPolicy) -> Self {
        self.retry = retry;
        self
    }

    pub fn limiter(&self) -> Arc<Limiter> {
        self.limiter.clone()
    }

    pub fn cache(&self) -> &ResponseCache {
        &self.cache
    }

    /// Number of requests sent to the backend (cache misses and retries).
    pub fn backend_calls(&self) -> usize {
        self.backend_calls.load(Ordering::SeqCst)
    }

    pub fn complete(&self, request: &CompletionRequest) -> Result<CompletionResponse> {
        request.validate()?;
        let key = request.cache_key();
        if let Some(mut hit) = self.cache.get(&key) {
            hit.from_cache = true;
            hit.latency_ms = 0;
            return Ok(hit);
        }
        let started = Instant::now();
        let completion = self.call_with_retries(request)?;
        let response = CompletionResponse {
            raw_text: completion.text,
            finish_reason: completion.finish_reason,
            latency_ms: u64::try_from(started.elapsed().as_millis()).unwrap_or(u64::MAX),
            from_cache: false,
        };
        self.cache.insert(&key, &request.model_id, &response)?;
        Ok(response)
    }

    fn call_with_retries(&self, request: &CompletionRequest) -> Result<Completion> {
        let tag = &request.tag.label;
        let mut transport_failures = 0u32;
        let mut content_retries = 0u32;
        loop {
            let outcome = {
                let _permit = self.limiter.acquire();
                self.backend_calls.fetch_add(1, Ordering::SeqCst);
                self.backend.complete(request)
            };
            match outcome {
                Ok(c) if c.text.trim().is_empty()
                    && request.tag.task == Task::Translate
                    && content_retries < self.retry.content_retries =>
                {
                    content_retries += 1;
                    log::warn!("{tag}: empty completion, retrying ({content_retries})");
                }
                Ok(c) => return Ok(c),
                Err(BackendError::Auth(m)) => {
                    return Err(Error::Config(format!("authentication failed: {m}")));
                }
                Err(BackendError::Fatal(m)) => {
                    return Err(Error::ProviderContract(format!("{tag}: {m}")));
                }
                Err(BackendError::Transient(m)) => {
                    transport_failures += 1;
                    if transport_failures >= self.retry.max_attempts {
                        return Err(Error::Transport {
                            tag: tag.clone(),
                            attempts: transport_failures,
                            message: m,
                        });
                    }
                    let wait = self.retry.delay(transport_failures);
                    log::warn!("{tag}: {m}; retrying in {wait:?}");
                    std::thread::sleep(wait);
                }
            }
        }
    }
}
