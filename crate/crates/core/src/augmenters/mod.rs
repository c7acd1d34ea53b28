//! Seedable synthesis of error-augmented prompt templates.
//!
//! Character-level augmenters (uniform typos and learner-style orthographic
//! errors) perturb unprotected ASCII letters with probability `p`. Catalog
//! families (phonetic, phrasal, register) return curated rewrites, and the
//! composite profiles apply orthographic errors on top of a catalog variant.
//! Placeholders such as `{src_text}` and `\n` escapes are always protected.

mod catalog;
mod char_spec;
mod character;
mod engine;
mod profile;
mod spans;

pub use catalog::{catalog_variant, CatalogFamily, CatalogSet, VariantCatalog};
pub use char_spec::{
    default_confusion_sets, parse_confusion_sets, CategoryWeights, CharacterErrorSpec,
    KeyboardLayout,
};
pub use character::{
    augment_template, orthographic_augment, orthographic_augment_traced, uniform_augment,
    uniform_augment_traced, CharAugmenter,
};
pub use engine::Augmentation;
pub use profile::{
    build_prompt_set, compose_profile, AugmentedPrompt, ErrorProfile, Parametrization,
    ProfileKind,
};
pub use spans::placeholder_spans;
