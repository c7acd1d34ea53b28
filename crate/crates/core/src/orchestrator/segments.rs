use std::collections::BTreeSet;
use std::path::Path;

use rand::seq::index::sample;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lang::LangPair;
use crate::rng::{derive_seed, rng_from_seed};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Segment {
    pub segment_id: String,
    pub source: String,
    pub reference: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentSet {
    pub lang_pair: LangPair,
    pub entries: Vec<Segment>,
}

/// One system's translation of one segment, input to QE.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemOutput {
    pub system_id: String,
    pub segment_id: String,
    pub source: String,
    pub translation: String,
}

/// Parse a JSONL file, reporting the first bad line by number.
pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::input(format!("{}: {e}", path.display()))
    })?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Malformed {
                path: path.to_path_buf(),
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

/// Indices of a seeded uniform sample of `n` out of `len`, in file order.
fn sample_indices(len: usize, n: usize, seed: u64, label: &str, what: &str) -> Vec<usize> {
    if n >= len {
        if n > len {
            log::warn!("{label}: asked for {n} {what}, only {len} available; using all");
        }
        return (0..len).collect();
    }
    let mut rng = rng_from_seed(derive_seed(seed, &["segment-sample".into(), label.into()]));
    let mut idx = sample(&mut rng, len, n).into_vec();
    idx.sort_unstable();
    idx
}

/// Load segments and draw a seeded sample of `n` without replacement (all of
/// them when the file holds fewer).
pub fn load_segments(path: &Path, lang_pair: LangPair, n: usize, seed: u64) -> Result<SegmentSet> {
    if n == 0 {
        return Err(Error::input("segment sample size must be at least 1"));
    }
    let all: Vec<Segment> = read_jsonl(path)?;
    let mut seen = BTreeSet::new();
    for (i, s) in all.iter().enumerate() {
        let malformed = |message: String| Error::Malformed {
            path: path.to_path_buf(),
            line: i + 1,
            message,
        };
        if s.source.trim().is_empty() {
            return Err(malformed(format!("segment {} has an empty source", s.segment_id)));
        }
        if !seen.insert(s.segment_id.as_str()) {
            return Err(malformed(format!("duplicate segment id {}", s.segment_id)));
        }
    }
    let label = lang_pair.to_string();
    let entries = sample_indices(all.len(), n, seed, &label, "segments")
        .into_iter()
        .map(|i| all[i].clone())
        .collect();
    Ok(SegmentSet { lang_pair, entries })
}

/// Load system outputs and keep every system's output for a seeded sample
/// of `n` segment ids.
pub fn load_system_outputs(path: &Path, lang_pair: LangPair, n: usize, seed: u64) -> Result<Vec<SystemOutput>> {
    if n == 0 {
        return Err(Error::input("segment sample size must be at least 1"));
    }
    let all: Vec<SystemOutput> = read_jsonl(path)?;
    let mut seen = BTreeSet::new();
    for (i, o) in all.iter().enumerate() {
        if o.source.trim().is_empty() || o.translation.trim().is_empty() {
            return Err(Error::Malformed {
                path: path.to_path_buf(),
                line: i + 1,
                message: format!("{}/{} has an empty field", o.system_id, o.segment_id),
            });
        }
        if !seen.insert((o.system_id.as_str(), o.segment_id.as_str())) {
            return Err(Error::Malformed {
                path: path.to_path_buf(),
                line: i + 1,
                message: format!("duplicate output {}/{}", o.system_id, o.segment_id),
            });
        }
    }
    let ids: Vec<&str> = all
        .iter()
        .map(|o| o.segment_id.as_str())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let label = format!("{lang_pair}/qe");
    let keep: BTreeSet<&str> = sample_indices(ids.len(), n, seed, &label, "segments")
        .into_iter()
        .map(|i| ids[i])
        .collect();
    Ok(all
        .iter()
        .filter(|o| keep.contains(o.segment_id.as_str()))
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(lines: &[String]) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        for l in lines {
            writeln!(f, "{l}").unwrap();
        }
        f
    }

    fn seg(i: usize) -> String {
        format!(r#"{{"segment_id":"s{i}","source":"Source {i}.","reference":"Ziel {i}."}}"#)
    }

    #[test]
    fn sampling_contract() {
        let f = file(&(0..10).map(seg).collect::<Vec<_>>());
        let pair: LangPair = "en-de".parse().unwrap();
        let all = load_segments(f.path(), pair, 50, 1).unwrap();
        assert_eq!(all.entries.len(), 10);
        let a = load_segments(f.path(), pair, 4, 1).unwrap();
        let b = load_segments(f.path(), pair, 4, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.entries.len(), 4);
        let c = load_segments(f.path(), pair, 4, 2).unwrap();
        assert_ne!(a, c);
        assert!(load_segments(f.path(), pair, 0, 1).is_err());
    }

    #[test]
    fn malformed_lines_are_located() {
        let f = file(&[seg(0), "{\"segment_id\":1}".into()]);
        match load_segments(f.path(), "en-de".parse().unwrap(), 5, 1) {
            Err(Error::Malformed { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        let f = file(&[seg(0), seg(0)]);
        assert!(matches!(
            load_segments(f.path(), "en-de".parse().unwrap(), 5, 1),
            Err(Error::Malformed { line: 2, .. })
        ));
    }
}
