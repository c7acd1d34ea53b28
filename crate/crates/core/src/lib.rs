//! Error-augmented prompt synthesis and robustness evaluation for LLM
//! translation and quality estimation.

pub mod analytics;
pub mod augmenters;
pub mod error;
pub mod gateway;
pub mod intensity;
pub mod lang;
pub mod orchestrator;
pub mod prompts;
pub mod rng;
pub mod scoring;

pub use error::{Error, Result};
