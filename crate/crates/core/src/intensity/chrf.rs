//! Character n-gram F-score.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// chrF configuration; the default is
/// `nrefs:1|case:mixed|eff:yes|nc:6|nw:0|space:no`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChrfSignature {
    pub ngram_order_char: usize,
    pub ngram_order_word: usize,
    pub beta: f64,
    pub effective_order: bool,
    pub case_sensitive: bool,
    pub include_whitespace: bool,
}

impl Default for ChrfSignature {
    fn default() -> Self {
        Self {
            ngram_order_char: 6,
            ngram_order_word: 0,
            beta: 2.0,
            effective_order: true,
            case_sensitive: true,
            include_whitespace: false,
        }
    }
}

impl ChrfSignature {
    pub fn signature_string(&self) -> String {
        format!(
            "nrefs:1|case:{}|eff:{}|nc:{}|nw:{}|space:{}",
            if self.case_sensitive { "mixed" } else { "lc" },
            if self.effective_order { "yes" } else { "no" },
            self.ngram_order_char,
            self.ngram_order_word,
            if self.include_whitespace { "yes" } else { "no" },
        )
    }
}

/// Whitespace as understood by Python's `str.split()`, which additionally
/// treats the ASCII separators U+001C..U+001F as whitespace.
fn is_split_whitespace(c: char) -> bool {
    c.is_whitespace() || ('\u{1c}'..='\u{1f}').contains(&c)
}

fn prepare(text: &str, sig: &ChrfSignature) -> Vec<char> {
    text.chars()
        .filter(|c| sig.include_whitespace || !is_split_whitespace(*c))
        .flat_map(|c| {
            let lowered: Vec<char> = if sig.case_sensitive {
                vec![c]
            } else {
                c.to_lowercase().collect()
            };
            lowered
        })
        .collect()
}

fn ngram_counts(chars: &[char], n: usize) -> HashMap<&[char], usize> {
    let mut counts = HashMap::new();
    if chars.len() >= n {
        for gram in chars.windows(n) {
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    counts
}

/// Per-order (hypothesis, reference, matched) n-gram totals.
fn statistics(hyp: &[char], reference: &[char], max_order: usize) -> Vec<[usize; 3]> {
    (1..=max_order)
        .map(|n| {
            let h = ngram_counts(hyp, n);
            let r = ngram_counts(reference, n);
            let matched = h
                .iter()
                .map(|(gram, count)| (*count).min(r.get(gram).copied().unwrap_or(0)))
                .sum();
            [h.values().sum(), r.values().sum(), matched]
        })
        .collect()
}

fn f_score(stats: &[[usize; 3]], sig: &ChrfSignature) -> f64 {
    const EPS: f64 = 1e-16;
    let factor = sig.beta * sig.beta;
    if !sig.effective_order {
        // smoothed mean of per-order F scores
        let total: f64 = stats
            .iter()
            .map(|&[n_hyp, n_ref, n_match]| {
                let prec = if n_hyp > 0 { n_match as f64 / n_hyp as f64 } else { EPS };
                let rec = if n_ref > 0 { n_match as f64 / n_ref as f64 } else { EPS };
                let denom = factor * prec + rec;
                if denom > 0.0 {
                    (1.0 + factor) * prec * rec / denom
                } else {
                    EPS
                }
            })
            .sum();
        return 100.0 * total / stats.len() as f64;
    }
    let mut avg_prec = 0.0;
    let mut avg_rec = 0.0;
    let mut effective = 0usize;
    for &[n_hyp, n_ref, n_match] in stats {
        if n_hyp > 0 && n_ref > 0 {
            avg_prec += n_match as f64 / n_hyp as f64;
            avg_rec += n_match as f64 / n_ref as f64;
            effective += 1;
        }
    }
    if effective == 0 {
        return 0.0;
    }
    avg_prec /= effective as f64;
    avg_rec /= effective as f64;
    if avg_prec + avg_rec == 0.0 {
        return 0.0;
    }
    100.0 * (1.0 + factor) * avg_prec * avg_rec / (factor * avg_prec + avg_rec)
}

/// Sentence-level chrF of `hypothesis` against a single `reference`.
///
/// Precision and recall are averaged over the orders that have n-grams on
/// both sides before combining into F-beta.
pub fn chrf(hypothesis: &str, reference: &str, sig: &ChrfSignature) -> Result<f64> {
    if sig.ngram_order_word != 0 {
        return Err(Error::input("word n-grams are not supported"));
    }
    if sig.ngram_order_char == 0 {
        return Err(Error::input("character n-gram order must be at least 1"));
    }
    let reference = prepare(reference, sig);
    if reference.is_empty() {
        return Err(Error::input("chrF reference is empty"));
    }
    let hypothesis = prepare(hypothesis, sig);
    let stats = statistics(&hypothesis, &reference, sig.ngram_order_char);
    Ok(f_score(&stats, sig).clamp(0.0, 100.0))
}

/// chrF with the default signature.
pub fn chrf_default(hypothesis: &str, reference: &str) -> Result<f64> {
    chrf(hypothesis, reference, &ChrfSignature::default())
}
