use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::request::CompletionResponse;
use crate::error::Result;

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    model_id: String,
    response: CompletionResponse,
}

/// Append-only JSONL store of completions keyed by request hash.
#[derive(Debug)]
pub struct ResponseCache {
    index: Mutex<HashMap<String, CompletionResponse>>,
    writer: Option<Mutex<File>>,
    path: Option<PathBuf>,
}

impl ResponseCache {
    pub fn in_memory() -> Self {
        Self {
            index: Mutex::new(HashMap::new()),
            writer: None,
            path: None,
        }
    }

    /// Load an existing cache file (skipping corrupt lines) and open it for
    /// appending.
    pub fn open(path: &Path) -> Result<Self> {
        let mut index = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            for (n, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<Entry>(&line) {
                    Ok(e) => {
                        index.insert(e.key, e.response);
                    }
                    Err(e) => log::warn!("{}:{}: skipping corrupt cache entry: {e}", path.display(), n + 1),
                }
            }
        } else if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        let bytes = std::fs::read(path)?;
        if bytes.last().is_some_and(|b| *b != b'\n') {
            file.write_all(b"\n")?;
        }
        Ok(Self {
            index: Mutex::new(index),
            writer: Some(Mutex::new(file)),
            path: Some(path.to_path_buf()),
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn get(&self, key: &str) -> Option<CompletionResponse> {
        self.index.lock().expect("cache index poisoned").get(key).cloned()
    }

    pub fn insert(&self, key: &str, model_id: &str, response: &CompletionResponse) -> Result<()> {
        if let Some(writer) = &self.writer {
            let mut line = serde_json::to_string(&Entry {
                key: key.to_string(),
                model_id: model_id.to_string(),
                response: response.clone(),
            })?;
            line.push('\n');
            let mut f = writer.lock().expect("cache writer poisoned");
            f.write_all(line.as_bytes())?;
            f.flush()?;
        }
        self.index
            .lock()
            .expect("cache index poisoned")
            .insert(key.to_string(), response.clone());
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.index.lock().expect("cache index poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resp(text: &str) -> CompletionResponse {
        CompletionResponse {
            raw_text: text.into(),
            finish_reason: Some("stop".into()),
            latency_ms: 3,
            from_cache: false,
        }
    }

    #[test]
    fn persists_and_skips_corrupt_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sub/cache.jsonl");
        {
            let c = ResponseCache::open(&path).unwrap();
            c.insert("k1", "m", &resp("one")).unwrap();
            c.insert("k2", "m", &resp("two")).unwrap();
        }
        let mut text = std::fs::read_to_string(&path).unwrap();
        text.push_str("{not json");
        std::fs::write(&path, text).unwrap();
        let c = ResponseCache::open(&path).unwrap();
        assert_eq!(c.len(), 2);
        let got = c.get("k1").unwrap();
        assert_eq!(got.raw_text, "one");
        assert_eq!(got.latency_ms, 0);
        assert!(c.get("k3").is_none());
    }
}
