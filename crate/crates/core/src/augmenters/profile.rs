use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::catalog::{CatalogFamily, CatalogSet};
use super::char_spec::CharacterErrorSpec;
use super::character::{augment_template, CharAugmenter};
use crate::error::{Error, Result};
use crate::prompts::{check_preserved, PromptTemplate};
use crate::rng::{derive_seed, rng_from_seed, SeedPart};

/// The seven error profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKind {
    Uniform,
    Orthographic,
    Phonetic,
    Phrasal,
    Register,
    L2,
    LazyUser,
}

impl ProfileKind {
    pub const ALL: [ProfileKind; 7] = [
        ProfileKind::Uniform,
        ProfileKind::Orthographic,
        ProfileKind::Phonetic,
        ProfileKind::Phrasal,
        ProfileKind::Register,
        ProfileKind::L2,
        ProfileKind::LazyUser,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ProfileKind::Uniform => "uniform",
            ProfileKind::Orthographic => "orthographic",
            ProfileKind::Phonetic => "phonetic",
            ProfileKind::Phrasal => "phrasal",
            ProfileKind::Register => "register",
            ProfileKind::L2 => "l2",
            ProfileKind::LazyUser => "lazy_user",
        }
    }

    /// Catalog family consulted first, if any.
    pub fn catalog_family(self) -> Option<CatalogFamily> {
        match self {
            ProfileKind::Phonetic => Some(CatalogFamily::Phonetic),
            ProfileKind::Phrasal | ProfileKind::L2 => Some(CatalogFamily::Phrasal),
            ProfileKind::Register | ProfileKind::LazyUser => Some(CatalogFamily::Register),
            ProfileKind::Uniform | ProfileKind::Orthographic => None,
        }
    }

    /// Character augmenter applied (last), if any.
    pub fn char_augmenter(self) -> Option<CharAugmenter> {
        match self {
            ProfileKind::Uniform => Some(CharAugmenter::Uniform),
            ProfileKind::Orthographic | ProfileKind::L2 | ProfileKind::LazyUser => {
                Some(CharAugmenter::Orthographic)
            }
            _ => None,
        }
    }

    pub fn is_composite(self) -> bool {
        self.catalog_family().is_some() && self.char_augmenter().is_some()
    }

    /// Default parametrization grid.
    ///
    /// Orthographic p runs over {0.04, ..., 0.40}, uniform over {0.1, ..., 1.0};
    /// p = 0 is the unperturbed control and is not part of any grid.
    pub fn default_grid(self) -> Vec<Parametrization> {
        let ortho: Vec<f64> = (1..=10).map(|k| f64::from(k * 4) / 100.0).collect();
        match self {
            ProfileKind::Uniform => (1..=10)
                .map(|k| Parametrization::p(f64::from(k) / 10.0))
                .collect(),
            ProfileKind::Orthographic => ortho.into_iter().map(Parametrization::p).collect(),
            ProfileKind::Phonetic | ProfileKind::Phrasal | ProfileKind::Register => self
                .catalog_family()
                .map(|f| f.levels().iter().map(|l| Parametrization::level(*l)).collect())
                .unwrap_or_default(),
            ProfileKind::L2 | ProfileKind::LazyUser => [1u8, 2]
                .iter()
                .flat_map(|l| ortho.iter().map(move |p| Parametrization::p_level(*p, *l)))
                .collect(),
        }
    }
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProfileKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProfileKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::input(format!("unknown error profile {s:?}")))
    }
}

/// One point of a profile's parameter grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct Parametrization {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<u8>,
}

impl Parametrization {
    pub fn p(p: f64) -> Self {
        Self {
            p: Some(p),
            level: None,
        }
    }

    pub fn level(level: u8) -> Self {
        Self {
            p: None,
            level: Some(level),
        }
    }

    pub fn p_level(p: f64, level: u8) -> Self {
        Self {
            p: Some(p),
            level: Some(level),
        }
    }

    /// Stable textual key, e.g. `p=0.12` or `p=0.08,level=2`.
    pub fn key(&self) -> String {
        let mut parts = Vec::new();
        if let Some(p) = self.p {
            parts.push(format!("p={p}"));
        }
        if let Some(level) = self.level {
            parts.push(format!("level={level}"));
        }
        if parts.is_empty() {
            "base".to_string()
        } else {
            parts.join(",")
        }
    }
}

/// An error profile with its character-level settings.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorProfile {
    pub kind: ProfileKind,
    /// Settings for the character augmenter; `p` is overridden per grid point.
    pub char_spec: Option<CharacterErrorSpec>,
    pub catalog_level: Option<u8>,
}

impl ErrorProfile {
    pub fn new(kind: ProfileKind) -> Self {
        Self {
            kind,
            char_spec: kind.char_augmenter().map(|_| CharacterErrorSpec::default()),
            catalog_level: None,
        }
    }

    pub fn with_spec(mut self, spec: CharacterErrorSpec) -> Self {
        self.char_spec = Some(spec);
        self
    }

    pub fn with_level(mut self, level: u8) -> Self {
        self.catalog_level = Some(level);
        self
    }

    fn spec_at(&self, p: f64) -> CharacterErrorSpec {
        let mut spec = self.char_spec.clone().unwrap_or_default();
        spec.p = p;
        spec
    }
}

/// A perturbed template with the provenance needed to regenerate it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AugmentedPrompt {
    pub base_prompt_id: String,
    pub template_text: String,
    pub profile: ProfileKind,
    pub parametrization: Parametrization,
    /// Catalog variant used, for catalog-backed profiles.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant_index: Option<usize>,
    pub seed: u64,
    pub replicate_index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub similarity_surface: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub similarity_semantic: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bucket_index: Option<usize>,
}

impl AugmentedPrompt {
    /// Key identifying the correlation point this prompt contributes to.
    ///
    /// Catalog-only profiles treat each stored variant as its own
    /// parametrization.
    pub fn point_key(&self) -> String {
        match (self.profile.char_augmenter(), self.variant_index) {
            (None, Some(v)) => format!("{},variant={v}", self.parametrization.key()),
            _ => self.parametrization.key(),
        }
    }
}

/// Apply a catalog-backed profile: look up a variant, then (for composites)
/// apply orthographic errors with placeholders protected.
pub fn compose_profile(
    profile: &ErrorProfile,
    base_prompt_id: &str,
    catalogs: &CatalogSet,
    variant_index: usize,
    seed: u64,
) -> Result<String> {
    let family = profile.kind.catalog_family().ok_or_else(|| {
        Error::input(format!("{} is not a catalog-backed profile", profile.kind))
    })?;
    let variant = catalogs
        .get(family)
        .variant(base_prompt_id, profile.catalog_level, variant_index)?;
    match profile.kind.char_augmenter() {
        Some(augmenter) => {
            let spec = profile.char_spec.clone().unwrap_or_default();
            augment_template(augmenter, variant, &spec, seed, &[])
        }
        None => Ok(variant.to_string()),
    }
}

/// Generate the augmented prompt set for one base prompt and profile.
///
/// Character-level profiles yield `grid.len() * replicates` prompts;
/// catalog-only profiles yield one prompt per stored variant at each grid
/// level; composites pick a seeded variant per replicate.
pub fn build_prompt_set(
    base: &PromptTemplate,
    profile: &ErrorProfile,
    grid: &[Parametrization],
    replicates: usize,
    master_seed: u64,
    catalogs: &CatalogSet,
) -> Result<Vec<AugmentedPrompt>> {
    if grid.is_empty() {
        return Err(Error::input("parametrization grid is empty"));
    }
    if replicates == 0 {
        return Err(Error::input("replicates must be at least 1"));
    }
    let kind = profile.kind;
    let mut out = Vec::new();
    for point in grid {
        let seed_for = |replicate: usize, variant: Option<usize>| {
            let mut parts: Vec<SeedPart<'_>> = vec![
                base.id.as_str().into(),
                kind.as_str().into(),
                point.p.unwrap_or(-1.0).into(),
                u64::from(point.level.unwrap_or(0)).into(),
                replicate.into(),
            ];
            if let Some(v) = variant {
                parts.push(v.into());
            }
            derive_seed(master_seed, &parts)
        };
        let make = |template_text: String,
                    variant_index: Option<usize>,
                    seed: u64,
                    replicate_index: usize| AugmentedPrompt {
            base_prompt_id: base.id.clone(),
            template_text,
            profile: kind,
            parametrization: *point,
            variant_index,
            seed,
            replicate_index,
            similarity_surface: None,
            similarity_semantic: None,
            bucket_index: None,
        };

        match (kind.catalog_family(), kind.char_augmenter()) {
            (None, Some(augmenter)) => {
                let p = point
                    .p
                    .ok_or_else(|| Error::input(format!("{kind} grid point lacks p")))?;
                let spec = profile.spec_at(p);
                for replicate in 0..replicates {
                    let seed = seed_for(replicate, None);
                    let text = augment_template(augmenter, &base.text, &spec, seed, &[])?;
                    out.push(make(text, None, seed, replicate));
                }
            }
            (Some(family), None) => {
                let level = point.level.or(profile.catalog_level);
                let variants = catalogs.get(family).variants(&base.id, level)?;
                for (index, variant) in variants.iter().enumerate() {
                    let seed = seed_for(0, Some(index));
                    out.push(make(variant.clone(), Some(index), seed, 0));
                }
            }
            (Some(family), Some(_)) => {
                let p = point
                    .p
                    .ok_or_else(|| Error::input(format!("{kind} grid point lacks p")))?;
                let level = point
                    .level
                    .or(profile.catalog_level)
                    .ok_or_else(|| Error::input(format!("{kind} grid point lacks a level")))?;
                let n_variants = catalogs.get(family).variants(&base.id, Some(level))?.len();
                let composed = ErrorProfile {
                    kind,
                    char_spec: Some(profile.spec_at(p)),
                    catalog_level: Some(level),
                };
                for replicate in 0..replicates {
                    let seed = seed_for(replicate, None);
                    let index = rng_from_seed(seed).gen_range(0..n_variants);
                    let text = compose_profile(&composed, &base.id, catalogs, index, seed)?;
                    out.push(make(text, Some(index), seed, replicate));
                }
            }
            (None, None) => unreachable!("every profile has a catalog or a character augmenter"),
        }
    }
    for prompt in &out {
        check_preserved(&prompt.template_text, &base.text, prompt.profile.char_augmenter().is_some() && prompt.profile.catalog_family().is_none())
            .map_err(|e| Error::Internal(format!("{} produced an invalid template: {e}", kind)))?;
    }
    Ok(out)
}
