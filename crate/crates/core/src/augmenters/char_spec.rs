use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const QWERTY: &str = include_str!("../../data/keyboard_qwerty.txt");
const CONFUSION_SETS: &str = include_str!("../../data/confusion_sets.txt");

pub const VOWELS: [char; 5] = ['a', 'e', 'i', 'o', 'u'];

pub fn is_vowel(c: char) -> bool {
    VOWELS.contains(&c.to_ascii_lowercase())
}

pub fn is_consonant(c: char) -> bool {
    c.is_ascii_alphabetic() && !is_vowel(c)
}

/// Relative frequencies of the orthographic error categories.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryWeights {
    pub substitution: f64,
    pub omission: f64,
    pub insertion: f64,
    pub transposition: f64,
    pub natural_typo: f64,
}

impl Default for CategoryWeights {
    fn default() -> Self {
        Self {
            substitution: 0.35,
            omission: 0.20,
            insertion: 0.15,
            transposition: 0.10,
            natural_typo: 0.20,
        }
    }
}

impl CategoryWeights {
    pub(crate) fn as_array(&self) -> [f64; 5] {
        [
            self.substitution,
            self.omission,
            self.insertion,
            self.transposition,
            self.natural_typo,
        ]
    }
}

/// QWERTY-style adjacency: each lowercase letter maps to its neighbouring keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeyboardLayout {
    neighbors: BTreeMap<char, Vec<char>>,
}

impl KeyboardLayout {
    pub fn qwerty() -> Self {
        Self::parse(QWERTY).expect("bundled keyboard layout parses")
    }

    /// Parse `letter neighbours` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut neighbors = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let key = fields.next().unwrap_or_default();
            let rest: String = fields.collect();
            let mut key_chars = key.chars();
            let (Some(k), None) = (key_chars.next(), key_chars.next()) else {
                return Err(Error::input(format!(
                    "keyboard layout line {}: expected a single key, got {key:?}",
                    lineno + 1
                )));
            };
            let adj: Vec<char> = rest.chars().map(|c| c.to_ascii_lowercase()).collect();
            if !k.is_ascii_lowercase() || adj.iter().any(|c| !c.is_ascii_lowercase()) {
                return Err(Error::input(format!(
                    "keyboard layout line {}: keys must be lowercase ASCII letters",
                    lineno + 1
                )));
            }
            neighbors.insert(k, adj);
        }
        Ok(Self { neighbors })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn neighbors(&self, c: char) -> &[char] {
        self.neighbors
            .get(&c.to_ascii_lowercase())
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }
}

pub fn parse_confusion_sets(text: &str) -> Result<Vec<Vec<char>>> {
    let mut sets = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let set: Vec<char> = line.split_whitespace().flat_map(str::chars).collect();
        sets.push(set);
    }
    Ok(sets)
}

pub fn default_confusion_sets() -> Vec<Vec<char>> {
    parse_confusion_sets(CONFUSION_SETS).expect("bundled confusion sets parse")
}

/// Parameters of the character-level augmenters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterErrorSpec {
    /// Per-character error probability.
    pub p: f64,
    #[serde(default)]
    pub category_weights: CategoryWeights,
    /// Share of vowel substitutions that are mutual a/e/i confusions.
    #[serde(default = "default_aei_mass")]
    pub vowel_aei_mass: f64,
    #[serde(default = "default_confusion_sets")]
    pub consonant_confusion_sets: Vec<Vec<char>>,
    #[serde(default = "KeyboardLayout::qwerty")]
    pub keyboard_layout: KeyboardLayout,
}

fn default_aei_mass() -> f64 {
    0.6
}

impl Default for CharacterErrorSpec {
    fn default() -> Self {
        Self::with_p(0.0)
    }
}

impl CharacterErrorSpec {
    pub fn with_p(p: f64) -> Self {
        Self {
            p,
            category_weights: CategoryWeights::default(),
            vowel_aei_mass: default_aei_mass(),
            consonant_confusion_sets: default_confusion_sets(),
            keyboard_layout: KeyboardLayout::qwerty(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::input(format!("p = {} outside [0, 1]", self.p)));
        }
        let weights = self.category_weights.as_array();
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::input("category weights must be nonnegative"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::input(format!(
                "category weights sum to {total}, expected 1"
            )));
        }
        if !(0.0..=1.0).contains(&self.vowel_aei_mass) {
            return Err(Error::input(format!(
                "vowel_aei_mass = {} outside [0, 1]",
                self.vowel_aei_mass
            )));
        }
        for set in &self.consonant_confusion_sets {
            if let Some(bad) = set
                .iter()
                .find(|c| !c.is_ascii_lowercase() || is_vowel(**c))
            {
                return Err(Error::input(format!(
                    "confusion set {set:?} contains {bad:?}, not a lowercase consonant"
                )));
            }
        }
        Ok(())
    }

    /// Letters a consonant may be confused with, excluding itself.
    pub(crate) fn confusions_for(&self, c: char) -> Vec<char> {
        let lower = c.to_ascii_lowercase();
        let mut out: Vec<char> = self
            .consonant_confusion_sets
            .iter()
            .filter(|set| set.contains(&lower))
            .flat_map(|set| set.iter().copied())
            .filter(|x| *x != lower)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Conditional target weights for substituting vowel `v`.
    ///
    /// The joint distribution over ordered vowel confusions puts
    /// `vowel_aei_mass` on the six a/e/i pairs and spreads the rest evenly
    /// over the remaining fourteen.
    pub(crate) fn vowel_targets(&self, v: char) -> Vec<(char, f64)> {
        let v = v.to_ascii_lowercase();
        let aei = |c: char| matches!(c, 'a' | 'e' | 'i');
        VOWELS
            .iter()
            .copied()
            .filter(|w| *w != v)
            .map(|w| {
                let weight = if aei(v) && aei(w) {
                    self.vowel_aei_mass / 6.0
                } else {
                    (1.0 - self.vowel_aei_mass) / 14.0
                };
                (w, weight)
            })
            .filter(|(_, weight)| *weight > 0.0)
            .collect()
    }
}
