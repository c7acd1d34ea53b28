use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prompts::placeholder_names;

const PHONETIC: &str = include_str!("../../data/catalogs/phonetic.jsonl");
const PHRASAL: &str = include_str!("../../data/catalogs/phrasal.jsonl");
const REGISTER: &str = include_str!("../../data/catalogs/register.jsonl");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogFamily {
    Phonetic,
    Phrasal,
    Register,
}

impl CatalogFamily {
    pub fn levels(self) -> &'static [u8] {
        match self {
            CatalogFamily::Phonetic => &[1],
            CatalogFamily::Phrasal | CatalogFamily::Register => &[1, 2],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CatalogFamily::Phonetic => "phonetic",
            CatalogFamily::Phrasal => "phrasal",
            CatalogFamily::Register => "register",
        }
    }
}

impl fmt::Display for CatalogFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CatalogFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phonetic" => Ok(CatalogFamily::Phonetic),
            "phrasal" => Ok(CatalogFamily::Phrasal),
            "register" => Ok(CatalogFamily::Register),
            other => Err(Error::input(format!("unknown catalog family {other:?}"))),
        }
    }
}

#[derive(Debug, Deserialize, Serialize)]
struct CatalogLine {
    base_prompt_id: String,
    level: u8,
    variant: String,
}

/// Curated rewrites of base prompts for one error family.
#[derive(Debug, Clone, PartialEq)]
pub struct VariantCatalog {
    pub family: CatalogFamily,
    entries: BTreeMap<(String, u8), Vec<String>>,
    /// Nominal number of candidates generated per prompt and level.
    pub k: usize,
}

impl VariantCatalog {
    pub fn builtin(family: CatalogFamily) -> Self {
        let text = match family {
            CatalogFamily::Phonetic => PHONETIC,
            CatalogFamily::Phrasal => PHRASAL,
            CatalogFamily::Register => REGISTER,
        };
        Self::parse(family, text, Path::new("<builtin>")).expect("bundled catalog parses")
    }

    pub fn load(family: CatalogFamily, path: &Path) -> Result<Self> {
        Self::parse(family, &std::fs::read_to_string(path)?, path)
    }

    /// Parse JSONL records `{base_prompt_id, level, variant}`.
    pub fn parse(family: CatalogFamily, text: &str, origin: &Path) -> Result<Self> {
        let mut entries: BTreeMap<(String, u8), Vec<String>> = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let rec: CatalogLine = serde_json::from_str(line).map_err(|e| Error::Malformed {
                path: origin.to_path_buf(),
                line: lineno + 1,
                message: e.to_string(),
            })?;
            if !family.levels().contains(&rec.level) {
                return Err(Error::Malformed {
                    path: origin.to_path_buf(),
                    line: lineno + 1,
                    message: format!("level {} not valid for {family}", rec.level),
                });
            }
            entries
                .entry((rec.base_prompt_id, rec.level))
                .or_default()
                .push(rec.variant);
        }
        Ok(Self {
            family,
            entries,
            k: 10,
        })
    }

    pub fn insert(&mut self, base_prompt_id: &str, level: u8, variant: String) {
        self.entries
            .entry((base_prompt_id.to_string(), level))
            .or_default()
            .push(variant);
    }

    fn resolve_level(&self, level: Option<u8>) -> Result<u8> {
        match level {
            Some(l) => Ok(l),
            None if self.family.levels().len() == 1 => Ok(self.family.levels()[0]),
            None => Err(Error::input(format!("{} catalog requires a level", self.family))),
        }
    }

    pub fn variants(&self, base_prompt_id: &str, level: Option<u8>) -> Result<&[String]> {
        let level = self.resolve_level(level)?;
        self.entries
            .get(&(base_prompt_id.to_string(), level))
            .map(Vec::as_slice)
            .ok_or_else(|| Error::NotFound {
                what: format!("{} variants for ({base_prompt_id}, level {level})", self.family),
                available: self.available_keys(),
            })
    }

    /// The stored variant at `index`, verbatim.
    pub fn variant(&self, base_prompt_id: &str, level: Option<u8>, index: usize) -> Result<&str> {
        let variants = self.variants(base_prompt_id, level)?;
        variants.get(index).map(String::as_str).ok_or_else(|| Error::NotFound {
            what: format!(
                "{} variant #{index} for {base_prompt_id} ({} stored)",
                self.family,
                variants.len()
            ),
            available: self.available_keys(),
        })
    }

    pub fn available_keys(&self) -> String {
        self.entries
            .keys()
            .map(|(id, level)| format!("({id}, {level})"))
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn keys(&self) -> impl Iterator<Item = (&str, u8)> {
        self.entries.keys().map(|(id, l)| (id.as_str(), *l))
    }

    /// Check every variant carries exactly the placeholder names of its base.
    pub fn check_against(&self, base_text: impl Fn(&str) -> Option<String>) -> Vec<String> {
        let mut problems = Vec::new();
        for ((id, level), variants) in &self.entries {
            let Some(base) = base_text(id) else {
                problems.push(format!("{}: unknown base prompt {id}", self.family));
                continue;
            };
            let expected = placeholder_names(&base);
            for (i, v) in variants.iter().enumerate() {
                let got = placeholder_names(v);
                if got != expected {
                    problems.push(format!(
                        "{} ({id}, {level}) #{i}: placeholders {got:?}, base has {expected:?}",
                        self.family
                    ));
                }
            }
        }
        problems
    }
}

/// The three catalog families used by the profiles.
#[derive(Debug, Clone)]
pub struct CatalogSet {
    pub phonetic: VariantCatalog,
    pub phrasal: VariantCatalog,
    pub register: VariantCatalog,
}

impl CatalogSet {
    pub fn builtin() -> Self {
        Self {
            phonetic: VariantCatalog::builtin(CatalogFamily::Phonetic),
            phrasal: VariantCatalog::builtin(CatalogFamily::Phrasal),
            register: VariantCatalog::builtin(CatalogFamily::Register),
        }
    }

    /// Load `phonetic.jsonl`, `phrasal.jsonl`, `register.jsonl` from a directory.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        Ok(Self {
            phonetic: VariantCatalog::load(CatalogFamily::Phonetic, &dir.join("phonetic.jsonl"))?,
            phrasal: VariantCatalog::load(CatalogFamily::Phrasal, &dir.join("phrasal.jsonl"))?,
            register: VariantCatalog::load(CatalogFamily::Register, &dir.join("register.jsonl"))?,
        })
    }

    pub fn get(&self, family: CatalogFamily) -> &VariantCatalog {
        match family {
            CatalogFamily::Phonetic => &self.phonetic,
            CatalogFamily::Phrasal => &self.phrasal,
            CatalogFamily::Register => &self.register,
        }
    }
}

/// Look up a stored variant.
pub fn catalog_variant<'a>(
    catalog: &'a VariantCatalog,
    base_prompt_id: &str,
    level: Option<u8>,
    index: usize,
) -> Result<&'a str> {
    catalog.variant(base_prompt_id, level, index)
}
