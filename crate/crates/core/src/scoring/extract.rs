use serde::{Deserialize, Serialize};

use crate::lang::Lang;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtractMode {
    /// Score the raw output unchanged.
    #[default]
    Identity,
    /// Drop leading boilerplate such as "Here is the translation:".
    Strip,
}

const LEAD_INS: &[&str] = &[
    "here is the translation",
    "here's the translation",
    "here is a translation",
    "here is my translation",
    "sure, here is",
    "sure! here is",
    "sure, here's",
    "translation:",
    "translated text:",
    "hier ist die übersetzung",
    "hier ist eine übersetzung",
    "übersetzung:",
    "zde je překlad",
    "překlad:",
    "ось переклад",
    "переклад:",
    "вот перевод",
    "перевод:",
    "以下是翻译",
    "翻译：",
    "翻译:",
];

fn is_lead_in(line: &str, target: Lang) -> bool {
    let lower = line.trim().to_lowercase();
    let label = format!("{}:", target.english_name().to_lowercase());
    lower.starts_with(&label)
        || LEAD_INS.iter().any(|p| lower.starts_with(p))
}

/// Text after the line's first colon, if any.
fn after_colon(line: &str) -> Option<&str> {
    let idx = line.find([':', '：'])?;
    let colon_len = line[idx..].chars().next().map_or(1, char::len_utf8);
    Some(line[idx + colon_len..].trim())
}

/// Translation text to score from a model reply.
///
/// In strip mode, leading lines that introduce the answer or echo the
/// prompt are removed; a lead-in followed by text on the same line keeps
/// that text.
pub fn extract_translation(raw_output: &str, target: Lang, mode: ExtractMode, prompt: Option<&str>) -> String {
    match mode {
        ExtractMode::Identity => raw_output.to_string(),
        ExtractMode::Strip => strip(raw_output, target, prompt),
    }
}

fn strip(raw: &str, target: Lang, prompt: Option<&str>) -> String {
    let prompt_lines: Vec<&str> = prompt
        .map(|p| p.lines().map(str::trim).filter(|l| !l.is_empty()).collect())
        .unwrap_or_default();
    let lines: Vec<&str> = raw.lines().collect();
    let mut rest: Option<String> = None;
    let mut i = 0;
    while i < lines.len() {
        let line = lines[i].trim();
        if line.is_empty() || prompt_lines.contains(&line) {
            i += 1;
            continue;
        }
        if is_lead_in(line, target) {
            i += 1;
            match after_colon(line) {
                Some(tail) if !tail.is_empty() => {
                    rest = Some(tail.to_string());
                    break;
                }
                _ => continue,
            }
        }
        break;
    }
    let mut out: Vec<String> = rest.into_iter().collect();
    out.extend(lines[i..].iter().map(|l| l.to_string()));
    out.join("\n").trim().to_string()
}
