//! Base translation and QE prompt templates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const BUILTIN_PROMPTS: &str = include_str!("../data/prompts.jsonl");

pub const SRC_LANG: &str = "src_lang";
pub const TGT_LANG: &str = "tgt_lang";
pub const SRC_TEXT: &str = "src_text";
pub const TGT_TEXT: &str = "tgt_text";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Translate,
    Qe,
}

impl Task {
    pub fn required_placeholders(self) -> &'static [&'static str] {
        match self {
            Task::Translate => &[SRC_LANG, TGT_LANG, SRC_TEXT],
            Task::Qe => &[SRC_LANG, TGT_LANG, SRC_TEXT, TGT_TEXT],
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Task::Translate => "translate",
            Task::Qe => "qe",
        })
    }
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "translate" => Ok(Task::Translate),
            "qe" => Ok(Task::Qe),
            other => Err(Error::input(format!("unknown task {other:?}"))),
        }
    }
}

fn brace_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\{([^{}]*)\}").expect("valid regex"))
}

fn name_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^[A-Za-z_][A-Za-z0-9_]*$").expect("valid regex"))
}

/// Placeholder names in order of appearance, with repeats.
pub fn placeholder_occurrences(text: &str) -> Vec<String> {
    brace_re()
        .captures_iter(text)
        .filter(|c| name_re().is_match(&c[1]))
        .map(|c| c[1].to_string())
        .collect()
}

pub fn placeholder_names(text: &str) -> BTreeSet<String> {
    placeholder_occurrences(text).into_iter().collect()
}

fn multiset(text: &str) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for name in placeholder_occurrences(text) {
        *counts.entry(name).or_insert(0) += 1;
    }
    counts
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    Missing(String),
    Unknown(String),
    /// A segment placeholder that appears more than once.
    Duplicated(String),
    /// Braces that do not form a placeholder.
    Malformed(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Missing(n) => write!(f, "missing {{{n}}}"),
            Violation::Unknown(n) => write!(f, "unknown placeholder {{{n}}}"),
            Violation::Duplicated(n) => write!(f, "{{{n}}} appears more than once"),
            Violation::Malformed(s) => write!(f, "malformed placeholder {s:?}"),
        }
    }
}

/// Check a template against the placeholder contract of `task`.
///
/// Language placeholders may repeat; segment placeholders (`src_text`,
/// `tgt_text`) must appear exactly once so rendering stays injective.
pub fn validate(template_text: &str, task: Task) -> Vec<Violation> {
    let mut violations = Vec::new();
    let required = task.required_placeholders();
    let counts = multiset(template_text);
    for name in required {
        match counts.get(*name) {
            None => violations.push(Violation::Missing(name.to_string())),
            Some(n) if *n > 1 && (*name == SRC_TEXT || *name == TGT_TEXT) => {
                violations.push(Violation::Duplicated(name.to_string()))
            }
            _ => {}
        }
    }
    for name in counts.keys() {
        if !required.contains(&name.as_str()) {
            violations.push(Violation::Unknown(name.clone()));
        }
    }
    let stripped = brace_re().replace_all(template_text, |c: &regex::Captures<'_>| {
        if name_re().is_match(&c[1]) {
            String::new()
        } else {
            violations.push(Violation::Malformed(c[0].to_string()));
            String::new()
        }
    });
    if stripped.contains('{') || stripped.contains('}') {
        violations.push(Violation::Malformed(
            "unbalanced brace".to_string(),
        ));
    }
    violations
}

/// Compare an augmented template's placeholders with its base.
///
/// With `exact`, multiplicities must match too (character-level augmenters);
/// otherwise only the set of names (catalog rewrites).
pub fn check_preserved(augmented: &str, base: &str, exact: bool) -> Result<()> {
    let ok = if exact {
        multiset(augmented) == multiset(base)
    } else {
        placeholder_names(augmented) == placeholder_names(base)
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Placeholder(format!(
            "placeholders {:?} differ from base {:?}",
            multiset(augmented),
            multiset(base)
        )))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptTemplate {
    pub id: String,
    pub task: Task,
    /// Template text; `\n` escapes expand to newlines at render time.
    pub text: String,
}

impl PromptTemplate {
    pub fn new(id: impl Into<String>, task: Task, text: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            task,
            text: text.into(),
        }
    }

    pub fn required_placeholders(&self) -> &'static [&'static str] {
        self.task.required_placeholders()
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate(&self.text, self.task)
    }
}

/// Placeholder bindings.
pub type Bindings = BTreeMap<String, String>;

pub fn translate_bindings(src_lang: &str, tgt_lang: &str, src_text: &str) -> Bindings {
    Bindings::from([
        (SRC_LANG.to_string(), src_lang.to_string()),
        (TGT_LANG.to_string(), tgt_lang.to_string()),
        (SRC_TEXT.to_string(), src_text.to_string()),
    ])
}

pub fn qe_bindings(src_lang: &str, tgt_lang: &str, src_text: &str, tgt_text: &str) -> Bindings {
    let mut b = translate_bindings(src_lang, tgt_lang, src_text);
    b.insert(TGT_TEXT.to_string(), tgt_text.to_string());
    b
}

/// Fill a template's placeholders in one pass and expand `\n` escapes.
///
/// Substituted values are never re-scanned, so a source text containing
/// `{tgt_lang}` is rendered literally.
pub fn render_text(text: &str, required: &[&str], bindings: &Bindings) -> Result<String> {
    for name in required {
        match bindings.get(*name) {
            None => return Err(Error::MissingBinding(name.to_string())),
            Some(v) if v.is_empty() => {
                return Err(Error::input(format!("binding for {{{name}}} is empty")))
            }
            _ => {}
        }
    }
    let mut out = String::with_capacity(text.len() + 64);
    let mut rest = text;
    while !rest.is_empty() {
        if let Some(stripped) = rest.strip_prefix("\\n") {
            out.push('\n');
            rest = stripped;
            continue;
        }
        if rest.starts_with('{') {
            if let Some(m) = brace_re().find(rest).filter(|m| m.start() == 0) {
                let name = &rest[1..m.end() - 1];
                if name_re().is_match(name) {
                    let value = bindings
                        .get(name)
                        .ok_or_else(|| Error::MissingBinding(name.to_string()))?;
                    out.push_str(value);
                    rest = &rest[m.end()..];
                    continue;
                }
            }
        }
        let ch = rest.chars().next().expect("nonempty");
        out.push(ch);
        rest = &rest[ch.len_utf8()..];
    }
    Ok(out)
}

pub fn render(template: &PromptTemplate, bindings: &Bindings) -> Result<String> {
    render_text(&template.text, template.required_placeholders(), bindings)
}

#[derive(Debug, Deserialize)]
struct PromptLine {
    id: String,
    task: Task,
    text: String,
}

/// Ordered collection of prompt templates.
#[derive(Debug, Clone)]
pub struct PromptCatalog {
    prompts: Vec<PromptTemplate>,
}

impl PromptCatalog {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_PROMPTS, Path::new("<builtin>")).expect("bundled prompts parse")
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?, path)
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let mut prompts: Vec<PromptTemplate> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let malformed = |message: String| Error::Malformed {
                path: origin.to_path_buf(),
                line: lineno + 1,
                message,
            };
            let rec: PromptLine =
                serde_json::from_str(line).map_err(|e| malformed(e.to_string()))?;
            if prompts.iter().any(|p| p.id == rec.id) {
                return Err(malformed(format!("duplicate prompt id {}", rec.id)));
            }
            prompts.push(PromptTemplate::new(rec.id, rec.task, rec.text));
        }
        Ok(Self { prompts })
    }

    pub fn get(&self, id: &str) -> Result<&PromptTemplate> {
        self.prompts.iter().find(|p| p.id == id).ok_or_else(|| Error::NotFound {
            what: format!("prompt {id:?}"),
            available: self.ids().join(", "),
        })
    }

    pub fn ids(&self) -> Vec<&str> {
        self.prompts.iter().map(|p| p.id.as_str()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &PromptTemplate> {
        self.prompts.iter()
    }
}
