use std::collections::BTreeMap;

use errprompt::augmenters::{build_prompt_set, AugmentedPrompt, CatalogSet, ErrorProfile, ProfileKind};
use errprompt::intensity::{bucketize, measure_similarities, sample_from_bucket, SimilarityCache, SimilarityMeasure};
use errprompt::prompts::PromptCatalog;
use proptest::prelude::*;

fn orthographic_prompts(replicates: usize) -> Vec<AugmentedPrompt> {
    let base = PromptCatalog::builtin().get("prompt3").unwrap().clone();
    let mut prompts = build_prompt_set(
        &base,
        &ErrorProfile::new(ProfileKind::Orthographic),
        &ProfileKind::Orthographic.default_grid(),
        replicates,
        11,
        &CatalogSet::builtin(),
    )
    .unwrap();
    measure_similarities(&mut prompts, &base.text, None, &SimilarityCache::in_memory()).unwrap();
    prompts
}

#[test]
fn every_assignment_lies_in_its_interval() {
    let mut prompts = orthographic_prompts(20);
    assert_eq!(prompts.len(), 200);
    let b = bucketize(&mut prompts, SimilarityMeasure::SurfaceChrf, 10).unwrap();
    assert_eq!(b.bounds.len(), 10);
    let min = prompts.iter().map(|p| p.similarity_surface.unwrap()).fold(f64::INFINITY, f64::min);
    for p in &prompts {
        let s = p.similarity_surface.unwrap();
        let i = p.bucket_index.unwrap();
        let (lo, hi) = b.bounds[i];
        assert!((lo < s || (i == 0 && s == min)) && s <= hi, "{s} not in bucket {i} ({lo}, {hi}]");
    }
    let top = prompts.iter().max_by(|a, b| a.similarity_surface.partial_cmp(&b.similarity_surface).unwrap()).unwrap();
    assert_eq!(top.bucket_index, Some(9));

    let again = bucketize(&mut prompts, SimilarityMeasure::SurfaceChrf, 10).unwrap();
    assert_eq!(again, b);
}

#[test]
fn four_prompt_bucket_is_sampled_uniformly() {
    let mut prompts = orthographic_prompts(1)[..4].to_vec();
    for p in &mut prompts {
        p.bucket_index = Some(0);
    }
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    let draws = 10_000;
    for i in 0..draws {
        let p = sample_from_bucket(&prompts, 0, &format!("seg-{i}"), 5).unwrap();
        *counts.entry(p.seed).or_default() += 1;
    }
    assert_eq!(counts.len(), 4);
    for n in counts.values() {
        let f = *n as f64 / draws as f64;
        assert!((f - 0.25).abs() <= 0.02, "{counts:?}");
    }
}

#[test]
fn singleton_and_empty_buckets() {
    let prompts = orthographic_prompts(1);
    let one = &prompts[..1];
    assert_eq!(sample_from_bucket(one, 3, "x", 1).unwrap().seed, one[0].seed);
    assert!(sample_from_bucket(&[], 3, "x", 1).is_none());
}

proptest! {
    #[test]
    fn sampling_ignores_input_order(segment in "[a-z0-9-]{1,12}", seed in any::<u64>(), rotate in 0usize..10) {
        let prompts = orthographic_prompts(1);
        let mut rotated = prompts.clone();
        rotated.rotate_left(rotate);
        prop_assert_eq!(
            sample_from_bucket(&prompts, 2, &segment, seed).unwrap().seed,
            sample_from_bucket(&rotated, 2, &segment, seed).unwrap().seed
        );
    }
}
