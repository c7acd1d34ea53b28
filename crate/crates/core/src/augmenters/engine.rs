//! Shared per-character perturbation loop.
//!
//! Each eligible character (an unprotected ASCII letter) independently fires
//! with probability `p`. A fired character asks the augmenter for an edit;
//! `None` means no subtype applies and the character is left unchanged.

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::char_spec::{is_consonant, is_vowel, CharacterErrorSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Edit {
    Omit,
    Double,
    Substitute(char),
    /// Swap with the following character.
    TransposeNext,
}

/// Context for one fired character.
pub(crate) struct Site<'a> {
    pub chars: &'a [char],
    pub protected: &'a [bool],
    pub index: usize,
    /// This character is already the partner of a transposition.
    pub locked: bool,
}

impl Site<'_> {
    pub fn current(&self) -> char {
        self.chars[self.index]
    }

    pub fn lower(&self) -> char {
        self.current().to_ascii_lowercase()
    }

    pub fn next(&self) -> Option<char> {
        self.chars.get(self.index + 1).copied()
    }

    pub fn next_lower(&self, offset: usize) -> Option<char> {
        self.chars
            .get(self.index + offset)
            .map(|c| c.to_ascii_lowercase())
    }

    pub fn word_initial(&self) -> bool {
        self.index == 0 || !self.chars[self.index - 1].is_ascii_alphabetic()
    }

    pub fn next_is_letter(&self) -> bool {
        self.next().is_some_and(|c| c.is_ascii_alphabetic())
    }

    pub fn next_is_consonant(&self) -> bool {
        self.next().is_some_and(is_consonant)
    }

    pub fn next_is_vowel(&self) -> bool {
        self.next().is_some_and(is_vowel)
    }

    /// A transposition partner exists, is unprotected, and this slot is free.
    pub fn can_transpose(&self) -> bool {
        !self.locked
            && self.index + 1 < self.chars.len()
            && !self.protected[self.index + 1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Augmentation {
    pub text: String,
    /// Characters that fired and received an edit.
    pub events: usize,
    /// Characters eligible for perturbation.
    pub eligible: usize,
}

pub(crate) fn run<F>(
    text: &str,
    protected: &[bool],
    p: f64,
    rng: &mut ChaCha8Rng,
    mut decide: F,
) -> Augmentation
where
    F: FnMut(&Site<'_>, &mut ChaCha8Rng) -> Option<Edit>,
{
    let chars: Vec<char> = text.chars().collect();
    debug_assert_eq!(chars.len(), protected.len());
    let mut out = String::with_capacity(text.len() + 8);
    let mut events = 0;
    let mut eligible = 0;
    // (character displaced by a transposition, case of the slot it vacated)
    let mut pending: Option<char> = None;
    let mut case_override: Option<bool> = None;

    for index in 0..chars.len() {
        let c = chars[index];
        let is_target = !protected[index] && c.is_ascii_alphabetic();
        let mut edit = None;
        if is_target {
            eligible += 1;
            if rng.gen_bool(p) {
                let site = Site {
                    chars: &chars,
                    protected,
                    index,
                    locked: pending.is_some(),
                };
                edit = decide(&site, rng);
                if edit == Some(Edit::TransposeNext) && !site.can_transpose() {
                    edit = None;
                }
                if edit.is_some() {
                    events += 1;
                }
            }
        }

        let slot_case = case_override.take();
        let emit = |out: &mut String, ch: char, upper: Option<bool>| match upper {
            Some(true) if ch.is_ascii_alphabetic() => out.push(ch.to_ascii_uppercase()),
            Some(false) if ch.is_ascii_alphabetic() => out.push(ch.to_ascii_lowercase()),
            _ => out.push(ch),
        };

        match edit {
            None => emit(&mut out, c, slot_case),
            Some(Edit::Omit) => {}
            Some(Edit::Double) => {
                emit(&mut out, c, slot_case);
                out.push(c);
            }
            Some(Edit::Substitute(x)) => {
                let upper = slot_case.unwrap_or(c.is_ascii_uppercase());
                emit(&mut out, x, Some(upper));
            }
            Some(Edit::TransposeNext) => {}
        }

        if let Some(displaced) = pending.take() {
            out.push(displaced);
        }

        if edit == Some(Edit::TransposeNext) {
            let next = chars[index + 1];
            // the partner inherits this slot's case, this char takes the partner's
            let moved = if next.is_ascii_alphabetic() {
                if next.is_ascii_uppercase() {
                    c.to_ascii_uppercase()
                } else {
                    c.to_ascii_lowercase()
                }
            } else {
                c
            };
            pending = Some(moved);
            if next.is_ascii_alphabetic() {
                case_override = Some(c.is_ascii_uppercase());
            }
        }
    }
    if let Some(displaced) = pending {
        out.push(displaced);
    }
    Augmentation {
        text: out,
        events,
        eligible,
    }
}

/// One of the uniform typo edits, chosen uniformly among those applicable.
pub(crate) fn uniform_edit(
    site: &Site<'_>,
    spec: &CharacterErrorSpec,
    rng: &mut ChaCha8Rng,
) -> Option<Edit> {
    let neighbors = spec.keyboard_layout.neighbors(site.lower());
    let mut options: Vec<Edit> = vec![Edit::Omit, Edit::Double];
    if !neighbors.is_empty() {
        options.push(Edit::Substitute(*neighbors.choose(rng)?));
    }
    if site.can_transpose() {
        options.push(Edit::TransposeNext);
    }
    options.choose(rng).copied()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Category {
    Substitution,
    Omission,
    Insertion,
    Transposition,
    NaturalTypo,
}

const CATEGORIES: [Category; 5] = [
    Category::Substitution,
    Category::Omission,
    Category::Insertion,
    Category::Transposition,
    Category::NaturalTypo,
];

/// Sample an orthographic category, then a subtype applicable in context.
pub(crate) fn orthographic_edit(
    site: &Site<'_>,
    spec: &CharacterErrorSpec,
    categories: &WeightedIndex<f64>,
    rng: &mut ChaCha8Rng,
) -> Option<Edit> {
    let category = CATEGORIES[categories.sample(rng)];
    let c = site.lower();
    let mut subtypes: Vec<Edit> = Vec::new();
    match category {
        Category::NaturalTypo => return uniform_edit(site, spec, rng),
        Category::Substitution => {
            let confusions = spec.confusions_for(c);
            if !confusions.is_empty() {
                subtypes.push(Edit::Substitute(*confusions.choose(rng)?));
            }
            if is_vowel(c) {
                let targets = spec.vowel_targets(c);
                if !targets.is_empty() {
                    let dist = WeightedIndex::new(targets.iter().map(|(_, w)| *w)).ok()?;
                    subtypes.push(Edit::Substitute(targets[dist.sample(rng)].0));
                }
            }
        }
        Category::Omission => {
            let initial = site.word_initial();
            // one of a non-word-initial consonant pair (ck -> k)
            if is_consonant(c) && !initial && site.next_is_consonant() {
                subtypes.push(Edit::Omit);
            }
            // r before a consonant
            if c == 'r' && site.next_is_consonant() {
                subtypes.push(Edit::Omit);
            }
            // word-final e, or e before "ly"
            if c == 'e' && !initial && !site.next_is_letter() {
                subtypes.push(Edit::Omit);
            }
            if c == 'e' && site.next_lower(1) == Some('l') && site.next_lower(2) == Some('y') {
                subtypes.push(Edit::Omit);
            }
        }
        Category::Insertion => {
            if is_consonant(c) && !site.word_initial() {
                subtypes.push(Edit::Double);
            }
        }
        Category::Transposition => {
            if site.can_transpose() {
                let next = site.next_lower(1);
                if is_vowel(c) && site.next_is_vowel() && next != Some(c) {
                    subtypes.push(Edit::TransposeNext);
                }
                if matches!((c, next), ('e', Some('r')) | ('n', Some('g'))) {
                    subtypes.push(Edit::TransposeNext);
                }
            }
        }
    }
    subtypes.choose(rng).copied()
}

pub(crate) fn category_index(spec: &CharacterErrorSpec) -> Option<WeightedIndex<f64>> {
    WeightedIndex::new(spec.category_weights.as_array()).ok()
}
