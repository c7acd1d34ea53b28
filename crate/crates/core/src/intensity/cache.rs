use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::bucket::SimilarityMeasure;
use crate::error::Result;
use crate::rng::text_hash;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SimilarityLine {
    text_hash_a: String,
    text_hash_b: String,
    measure: SimilarityMeasure,
    value: f64,
}

type Key = (String, String, SimilarityMeasure);

/// Append-only JSONL store of computed similarities.
///
/// Pairs are stored with hashes in sorted order since both measures are
/// symmetric.
#[derive(Debug)]
pub struct SimilarityCache {
    path: Option<PathBuf>,
    index: Mutex<HashMap<Key, f64>>,
    writer: Mutex<Option<File>>,
}

fn key(a: &str, b: &str, measure: SimilarityMeasure) -> Key {
    let (ha, hb) = (text_hash(a), text_hash(b));
    if ha <= hb {
        (ha, hb, measure)
    } else {
        (hb, ha, measure)
    }
}

impl SimilarityCache {
    pub fn in_memory() -> Self {
        Self {
            path: None,
            index: Mutex::new(HashMap::new()),
            writer: Mutex::new(None),
        }
    }

    pub fn open(path: &Path) -> Result<Self> {
        let mut index = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            for (lineno, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<SimilarityLine>(&line) {
                    Ok(rec) => {
                        index.insert((rec.text_hash_a, rec.text_hash_b, rec.measure), rec.value);
                    }
                    Err(e) => log::warn!(
                        "{}:{}: skipping corrupt similarity entry: {e}",
                        path.display(),
                        lineno + 1
                    ),
                }
            }
        }
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        if std::fs::read(path)?.last().is_some_and(|b| *b != b'\n') {
            file.write_all(b"\n")?;
        }
        Ok(Self {
            path: Some(path.to_path_buf()),
            index: Mutex::new(index),
            writer: Mutex::new(Some(file)),
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn get(&self, a: &str, b: &str, measure: SimilarityMeasure) -> Option<f64> {
        self.index
            .lock()
            .expect("similarity index poisoned")
            .get(&key(a, b, measure))
            .copied()
    }

    pub fn insert(&self, a: &str, b: &str, measure: SimilarityMeasure, value: f64) -> Result<()> {
        let k = key(a, b, measure);
        let mut index = self.index.lock().expect("similarity index poisoned");
        if index.contains_key(&k) {
            return Ok(());
        }
        let mut writer = self.writer.lock().expect("similarity writer poisoned");
        if let Some(file) = writer.as_mut() {
            let line = SimilarityLine {
                text_hash_a: k.0.clone(),
                text_hash_b: k.1.clone(),
                measure,
                value,
            };
            writeln!(file, "{}", serde_json::to_string(&line)?)?;
        }
        index.insert(k, value);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.index.lock().expect("similarity index poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
