//! Content-addressed cache of rendered reports: one JSON file per job, named
//! by the SHA-256 of the canonical input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    pub fn key(envelope_input: &Value, version: &str) -> String {
        let canonical = serde_json::to_string(&serde_json::json!({"input": envelope_input, "version": version}))
            .expect("values serialize");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", key))
    }

    /// The stored report, if present and consistent with `input`; a
    /// corrupted entry is reported and ignored.
    pub fn get(&self, key: &str, input: &Value, version: &str) -> Option<String> {
        let path = self.path(key);
        let text = fs::read_to_string(&path).ok()?;
        let valid = serde_json::from_str::<Value>(&text)
            .ok()
            .filter(|v| v.get("input") == Some(input) && v.get("version").and_then(Value::as_str) == Some(version));
        if valid.is_none() {
            log::warn!("cache entry {} is corrupt; recomputing", path.display());
            return None;
        }
        log::info!("served from cache: {}", path.display());
        Some(text)
    }

    /// Writes through a temporary file and an atomic rename.
    pub fn put(&self, key: &str, text: &str) -> std::io::Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(text.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}
