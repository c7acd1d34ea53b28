use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::lang::Lang;

const PROFILES: [(Lang, &str); 5] = [
    (Lang::En, include_str!("../../data/langprofiles/en.tsv")),
    (Lang::De, include_str!("../../data/langprofiles/de.tsv")),
    (Lang::Cs, include_str!("../../data/langprofiles/cs.tsv")),
    (Lang::Uk, include_str!("../../data/langprofiles/uk.tsv")),
    (Lang::Ru, include_str!("../../data/langprofiles/ru.tsv")),
];

const LATIN_LANGS: [Lang; 3] = [Lang::En, Lang::De, Lang::Cs];
const CYRILLIC_LANGS: [Lang; 2] = [Lang::Uk, Lang::Ru];

/// Detected language; `lang == None` means outside the supported set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detection {
    pub lang: Option<Lang>,
    pub confidence: f64,
}

impl Detection {
    pub fn code(&self) -> &'static str {
        self.lang.map_or("other", Lang::code)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Script {
    Latin,
    Cyrillic,
    Han,
    Other,
}

fn script(c: char) -> Option<Script> {
    if !c.is_alphabetic() {
        return None;
    }
    let cp = u32::from(c);
    Some(match cp {
        0x41..=0x5A | 0x61..=0x7A | 0xC0..=0x24F | 0x1E00..=0x1EFF => Script::Latin,
        0x400..=0x52F => Script::Cyrillic,
        0x3400..=0x4DBF | 0x4E00..=0x9FFF | 0xF900..=0xFAFF | 0x20000..=0x2FA1F => Script::Han,
        _ => Script::Other,
    })
}

#[derive(Debug)]
struct Profile {
    lang: Lang,
    counts: HashMap<String, f64>,
    /// Total n-gram count per order, indexed by n - 1.
    totals: [f64; 3],
    /// Probability used for n-grams this profile lacks, per order.
    floor: [f64; 3],
}

impl Profile {
    fn parse(lang: Lang, text: &str) -> Profile {
        let mut lines = text.lines();
        let header = lines.next().unwrap_or_default();
        let mut totals = [1.0; 3];
        if let Some(rest) = header.strip_prefix("# totals\t") {
            for (slot, v) in totals.iter_mut().zip(rest.split(' ')) {
                *slot = v.parse().unwrap_or(1.0);
            }
        }
        let mut counts = HashMap::new();
        let mut min_count = [f64::INFINITY; 3];
        for line in lines {
            let Some((count, gram)) = line.split_once('\t') else {
                continue;
            };
            let Ok(count) = count.parse::<f64>() else {
                continue;
            };
            let n = gram.chars().count();
            if !(1..=3).contains(&n) {
                continue;
            }
            min_count[n - 1] = min_count[n - 1].min(count);
            counts.insert(gram.to_string(), count);
        }
        let floor = std::array::from_fn(|i| {
            let m = if min_count[i].is_finite() { min_count[i] } else { 1.0 };
            0.5 * m / totals[i]
        });
        Profile {
            lang,
            counts,
            totals,
            floor,
        }
    }

    fn log_prob(&self, gram: &str, n: usize) -> f64 {
        match self.counts.get(gram) {
            Some(c) => (c / self.totals[n - 1]).ln(),
            None => self.floor[n - 1].ln(),
        }
    }
}

/// Character n-gram language identifier over en, de, cs, uk, zh and ru.
///
/// Han script maps to zh directly; Latin and Cyrillic texts are scored
/// against their script's candidates with a naive Bayes model over 1- to
/// 3-grams.
#[derive(Debug)]
pub struct LanguageDetector {
    profiles: Vec<Profile>,
}

impl LanguageDetector {
    pub fn builtin() -> &'static LanguageDetector {
        static DETECTOR: OnceLock<LanguageDetector> = OnceLock::new();
        DETECTOR.get_or_init(|| LanguageDetector {
            profiles: PROFILES
                .iter()
                .map(|(lang, text)| Profile::parse(*lang, text))
                .collect(),
        })
    }

    pub fn detect(&self, text: &str) -> Result<Detection> {
        if text.trim().is_empty() {
            return Err(Error::input("cannot detect the language of empty text"));
        }
        let mut per_script = [0usize; 4];
        for s in text.chars().filter_map(script) {
            per_script[s as usize] += 1;
        }
        let letters: usize = per_script.iter().sum();
        if letters == 0 {
            return Ok(Detection {
                lang: None,
                confidence: 1.0,
            });
        }
        // ties go to the earlier, more specific script
        let (dominant, count) = [Script::Han, Script::Cyrillic, Script::Latin, Script::Other]
            .into_iter()
            .map(|s| (s, per_script[s as usize]))
            .rev()
            .max_by_key(|&(_, n)| n)
            .expect("four scripts");
        let share = count as f64 / letters as f64;
        match dominant {
            Script::Han => Ok(Detection {
                lang: Some(Lang::Zh),
                confidence: share,
            }),
            Script::Other => Ok(Detection {
                lang: None,
                confidence: share,
            }),
            Script::Latin => Ok(self.classify(text, &LATIN_LANGS, Script::Latin, share)),
            Script::Cyrillic => Ok(self.classify(text, &CYRILLIC_LANGS, Script::Cyrillic, share)),
        }
    }

    fn classify(&self, text: &str, candidates: &[Lang], keep: Script, share: f64) -> Detection {
        let profiles: Vec<&Profile> = self
            .profiles
            .iter()
            .filter(|p| candidates.contains(&p.lang))
            .collect();
        let grams = ngrams(text, keep);
        let mut scores = vec![0.0f64; profiles.len()];
        for (gram, n) in &grams {
            if !profiles.iter().any(|p| p.counts.contains_key(gram)) {
                continue;
            }
            for (score, profile) in scores.iter_mut().zip(&profiles) {
                *score += profile.log_prob(gram, *n);
            }
        }
        let best = scores
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .expect("at least one candidate");
        let norm: f64 = scores.iter().map(|s| (s - scores[best]).exp()).sum();
        Detection {
            lang: Some(profiles[best].lang),
            confidence: (share / norm).clamp(0.0, 1.0),
        }
    }
}

/// Space-padded words of one script, split into 1- to 3-grams.
fn ngrams(text: &str, keep: Script) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    let cleaned: String = text
        .chars()
        .map(|c| if script(c) == Some(keep) { c } else { ' ' })
        .collect();
    for word in cleaned.split_whitespace() {
        let padded: Vec<char> = std::iter::once(' ')
            .chain(word.chars())
            .chain(std::iter::once(' '))
            .collect();
        for n in 1..=3 {
            for w in padded.windows(n) {
                if n == 1 && w[0] == ' ' {
                    continue;
                }
                out.push((w.iter().collect(), n));
            }
        }
    }
    out
}

/// Most probable language of `text` with the built-in detector.
pub fn detect_language(text: &str) -> Result<Detection> {
    LanguageDetector::builtin().detect(text)
}
