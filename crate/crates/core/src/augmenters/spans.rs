use std::ops::Range;

use regex::Regex;
use std::sync::OnceLock;

use crate::error::{Error, Result};

fn placeholder_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\{[A-Za-z_][A-Za-z0-9_]*\}|\\n").expect("valid regex"))
}

/// Byte ranges of `{name}` placeholders and literal `\n` escapes in a template.
pub fn placeholder_spans(text: &str) -> Vec<Range<usize>> {
    placeholder_re().find_iter(text).map(|m| m.range()).collect()
}

/// Per-character protection flags for `text` given byte-range spans.
///
/// Spans must be in-bounds, fall on character boundaries, and not overlap.
pub(crate) fn protection_mask(text: &str, spans: &[Range<usize>]) -> Result<Vec<bool>> {
    let mut sorted: Vec<&Range<usize>> = spans.iter().collect();
    sorted.sort_by_key(|r| (r.start, r.end));
    for pair in sorted.windows(2) {
        if pair[1].start < pair[0].end {
            return Err(Error::input(format!(
                "protected spans {:?} and {:?} overlap",
                pair[0], pair[1]
            )));
        }
    }
    for span in &sorted {
        if span.start > span.end || span.end > text.len() {
            return Err(Error::input(format!(
                "protected span {span:?} out of bounds for text of {} bytes",
                text.len()
            )));
        }
        if !text.is_char_boundary(span.start) || !text.is_char_boundary(span.end) {
            return Err(Error::input(format!(
                "protected span {span:?} does not fall on character boundaries"
            )));
        }
    }
    Ok(text
        .char_indices()
        .map(|(offset, _)| sorted.iter().any(|r| r.contains(&offset)))
        .collect())
}

/// Merge template placeholder spans with caller-provided spans.
pub(crate) fn with_placeholders(text: &str, extra: &[Range<usize>]) -> Vec<Range<usize>> {
    let mut spans = placeholder_spans(text);
    for r in extra {
        if !spans.iter().any(|s| s.start < r.end && r.start < s.end) {
            spans.push(r.clone());
        } else {
            // fold overlapping ranges into one
            let mut merged = r.clone();
            spans.retain(|s| {
                if s.start < merged.end && merged.start < s.end {
                    merged = merged.start.min(s.start)..merged.end.max(s.end);
                    false
                } else {
                    true
                }
            });
            spans.push(merged);
        }
    }
    spans.sort_by_key(|r| r.start);
    spans
}
