use std::fmt;

use serde::{Deserialize, Serialize};

use crate::augmenters::AugmentedPrompt;
use crate::error::{Error, Result};
use crate::rng::{derive_seed, rng_from_seed};
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SimilarityMeasure {
    /// chrF of the augmented template against its base, in [0, 100].
    #[default]
    SurfaceChrf,
    /// Embedding inner product, in [-1, 1].
    SemanticInnerProduct,
}

impl SimilarityMeasure {
    pub fn of(self, prompt: &AugmentedPrompt) -> Option<f64> {
        match self {
            SimilarityMeasure::SurfaceChrf => prompt.similarity_surface,
            SimilarityMeasure::SemanticInnerProduct => prompt.similarity_semantic,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SimilarityMeasure::SurfaceChrf => "surface_chrf",
            SimilarityMeasure::SemanticInnerProduct => "semantic_inner_product",
        }
    }
}

impl fmt::Display for SimilarityMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Equal-width similarity intervals.
///
/// Bucket `i` covers `(lo, hi]`, except bucket 0 which also includes its
/// lower bound (the observed minimum). Indices increase with similarity, so
/// the last bucket holds the least perturbed prompts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bucketing {
    pub measure: SimilarityMeasure,
    pub bucket_count: usize,
    pub bounds: Vec<(f64, f64)>,
}

impl Bucketing {
    pub fn contains(&self, bucket: usize, s: f64) -> bool {
        let Some(&(lo, hi)) = self.bounds.get(bucket) else {
            return false;
        };
        (lo < s || (bucket == 0 && s == lo)) && s <= hi
    }

    pub fn assign(&self, s: f64) -> Option<usize> {
        // bounds are sorted; the first bucket whose upper edge covers s
        let idx = self.bounds.partition_point(|&(_, hi)| hi < s);
        (idx < self.bounds.len() && self.contains(idx, s)).then_some(idx)
    }
}

/// Split prompts into `bucket_count` equal-width intervals of the chosen
/// similarity and record each prompt's bucket.
///
/// If every similarity is equal the range collapses to a single bucket.
pub fn bucketize(
    prompts: &mut [AugmentedPrompt],
    measure: SimilarityMeasure,
    bucket_count: usize,
) -> Result<Bucketing> {
    if bucket_count < 2 {
        return Err(Error::input("bucket_count must be at least 2"));
    }
    let values: Vec<f64> = prompts
        .iter()
        .map(|p| {
            measure.of(p).ok_or_else(|| {
                Error::input(format!(
                    "prompt {} ({}, {}) has no {measure} similarity",
                    p.base_prompt_id,
                    p.profile,
                    p.parametrization.key()
                ))
            })
        })
        .collect::<Result<_>>()?;
    if values.is_empty() {
        return Err(Error::input("no prompts to bucketize"));
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::input(format!("non-finite similarity {bad}")));
    }
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let bounds: Vec<(f64, f64)> = if max == min {
        vec![(min, max)]
    } else {
        let width = (max - min) / bucket_count as f64;
        let edge = |k: usize| {
            if k == bucket_count {
                max
            } else {
                min + width * k as f64
            }
        };
        (0..bucket_count).map(|k| (edge(k), edge(k + 1))).collect()
    };
    let bucketing = Bucketing {
        measure,
        bucket_count: bounds.len(),
        bounds,
    };
    for (prompt, s) in prompts.iter_mut().zip(&values) {
        let idx = bucketing
            .assign(*s)
            .ok_or_else(|| Error::Internal(format!("similarity {s} fell outside all buckets")))?;
        prompt.bucket_index = Some(idx);
    }
    Ok(bucketing)
}

/// Canonical ordering so sampling does not depend on input order.
fn canonical_order(prompts: &[AugmentedPrompt]) -> Vec<&AugmentedPrompt> {
    let mut sorted: Vec<&AugmentedPrompt> = prompts.iter().collect();
    sorted.sort_by(|a, b| {
        (a.seed, a.replicate_index, a.variant_index, &a.template_text).cmp(&(
            b.seed,
            b.replicate_index,
            b.variant_index,
            &b.template_text,
        ))
    });
    sorted
}

/// Pick one prompt from a bucket for a segment, seeded by
/// `(master_seed, bucket_index, segment_id)`. Returns `None` for an empty
/// bucket, which callers exclude from analysis.
pub fn sample_from_bucket<'a>(
    bucket_prompts: &'a [AugmentedPrompt],
    bucket_index: usize,
    segment_id: &str,
    master_seed: u64,
) -> Option<&'a AugmentedPrompt> {
    let seed = derive_seed(
        master_seed,
        &["bucket-sample".into(), bucket_index.into(), segment_id.into()],
    );
    pick(bucket_prompts, seed)
}

/// Like [`sample_from_bucket`] for an arbitrary named stratum, such as one
/// parametrization of one profile.
pub fn sample_from_stratum<'a>(
    prompts: &'a [AugmentedPrompt],
    stratum: &str,
    segment_id: &str,
    master_seed: u64,
) -> Option<&'a AugmentedPrompt> {
    let seed = derive_seed(
        master_seed,
        &["stratum-sample".into(), stratum.into(), segment_id.into()],
    );
    pick(prompts, seed)
}

fn pick(prompts: &[AugmentedPrompt], seed: u64) -> Option<&AugmentedPrompt> {
    if prompts.is_empty() {
        return None;
    }
    let ordered = canonical_order(prompts);
    let index = rng_from_seed(seed).gen_range(0..ordered.len());
    Some(ordered[index])
}
