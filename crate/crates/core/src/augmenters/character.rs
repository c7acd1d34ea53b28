use std::ops::Range;

use super::char_spec::CharacterErrorSpec;
use super::engine::{self, Augmentation};
use super::spans::{protection_mask, with_placeholders};
use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

/// Random typos: transposition with the next character, omission, doubling,
/// or substitution by a neighbouring key, chosen uniformly.
///
/// Characters inside `protected_spans` (byte ranges) are never modified and
/// never act as transposition partners.
pub fn uniform_augment(
    text: &str,
    spec: &CharacterErrorSpec,
    seed: u64,
    protected_spans: &[Range<usize>],
) -> Result<String> {
    uniform_augment_traced(text, spec, seed, protected_spans).map(|a| a.text)
}

pub fn uniform_augment_traced(
    text: &str,
    spec: &CharacterErrorSpec,
    seed: u64,
    protected_spans: &[Range<usize>],
) -> Result<Augmentation> {
    spec.validate()?;
    let mask = protection_mask(text, protected_spans)?;
    let mut rng = rng_from_seed(seed);
    Ok(engine::run(text, &mask, spec.p, &mut rng, |site, rng| {
        engine::uniform_edit(site, spec, rng)
    }))
}

/// Learner-style spelling errors sampled by category weight, then by
/// applicable subtype. A character with no applicable subtype is skipped.
pub fn orthographic_augment(
    text: &str,
    spec: &CharacterErrorSpec,
    seed: u64,
    protected_spans: &[Range<usize>],
) -> Result<String> {
    orthographic_augment_traced(text, spec, seed, protected_spans).map(|a| a.text)
}

pub fn orthographic_augment_traced(
    text: &str,
    spec: &CharacterErrorSpec,
    seed: u64,
    protected_spans: &[Range<usize>],
) -> Result<Augmentation> {
    spec.validate()?;
    let categories = engine::category_index(spec)
        .ok_or_else(|| Error::input("category weights admit no category"))?;
    let mask = protection_mask(text, protected_spans)?;
    let mut rng = rng_from_seed(seed);
    Ok(engine::run(text, &mask, spec.p, &mut rng, |site, rng| {
        engine::orthographic_edit(site, spec, &categories, rng)
    }))
}

/// Character-level augmenter family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharAugmenter {
    Uniform,
    Orthographic,
}

/// Apply an augmenter to a prompt template, protecting its placeholders and
/// `\n` escapes in addition to any caller-provided spans.
pub fn augment_template(
    augmenter: CharAugmenter,
    template: &str,
    spec: &CharacterErrorSpec,
    seed: u64,
    extra_spans: &[Range<usize>],
) -> Result<String> {
    let spans = with_placeholders(template, extra_spans);
    match augmenter {
        CharAugmenter::Uniform => uniform_augment(template, spec, seed, &spans),
        CharAugmenter::Orthographic => orthographic_augment(template, spec, seed, &spans),
    }
}
