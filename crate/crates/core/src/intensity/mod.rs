//! Prompt deviation measures and intensity buckets.

mod bucket;
mod cache;
mod chrf;
mod semantic;

pub use bucket::{bucketize, sample_from_bucket, sample_from_stratum, Bucketing, SimilarityMeasure};
pub use cache::SimilarityCache;
pub use chrf::{chrf, chrf_default, ChrfSignature};
pub use semantic::{inner_product, semantic_similarity, EmbeddingProvider};

use crate::augmenters::AugmentedPrompt;
use crate::error::Result;

/// Populate `similarity_surface` (and `similarity_semantic` when a provider
/// is given) for every prompt relative to `base_text`.
pub fn measure_similarities(
    prompts: &mut [AugmentedPrompt],
    base_text: &str,
    provider: Option<&dyn EmbeddingProvider>,
    cache: &SimilarityCache,
) -> Result<()> {
    let sig = ChrfSignature::default();
    for prompt in prompts.iter_mut() {
        let measure = SimilarityMeasure::SurfaceChrf;
        let value = match cache.get(&prompt.template_text, base_text, measure) {
            Some(v) => v,
            None => {
                let v = chrf(&prompt.template_text, base_text, &sig)?;
                cache.insert(&prompt.template_text, base_text, measure, v)?;
                v
            }
        };
        prompt.similarity_surface = Some(value);
    }
    let Some(provider) = provider else {
        return Ok(());
    };
    let measure = SimilarityMeasure::SemanticInnerProduct;
    let mut missing: Vec<String> = prompts
        .iter()
        .filter(|p| cache.get(&p.template_text, base_text, measure).is_none())
        .map(|p| p.template_text.clone())
        .collect();
    missing.sort();
    missing.dedup();
    if !missing.is_empty() {
        let mut texts = vec![base_text.to_string()];
        texts.extend(missing.iter().cloned());
        let vectors = provider.embed(&texts)?;
        if vectors.len() != texts.len() {
            return Err(crate::Error::ProviderContract(format!(
                "asked for {} embeddings, got {}",
                texts.len(),
                vectors.len()
            )));
        }
        for (text, v) in missing.iter().zip(&vectors[1..]) {
            let value = inner_product(&vectors[0], v)?;
            cache.insert(text, base_text, measure, value)?;
        }
    }
    for prompt in prompts.iter_mut() {
        prompt.similarity_semantic = cache.get(&prompt.template_text, base_text, measure);
    }
    Ok(())
}
