//! Shared nim-value memo keyed by [`CanonicalKey`], with JSON persistence.

use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::canon::CanonicalKey;
use crate::{Error, Result};

const FORMAT: &str = "chomp-transposition-table";
const VERSION: u32 = 1;

/// Concurrent memo of component nim-values.
///
/// Inserting an existing key is a no-op when the values agree and a
/// [`Error::TableConflict`] when they do not.
#[derive(Default)]
pub struct TranspositionTable {
    entries: RwLock<HashMap<CanonicalKey, u32>>,
    hits: AtomicU64,
    misses: AtomicU64,
    inserts: AtomicU64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableStats {
    pub entries: u64,
    pub hits: u64,
    pub misses: u64,
    pub inserts: u64,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    format: String,
    version: u32,
    /// `(hex key bytes, nim-value)`, sorted by key.
    entries: Vec<(String, u32)>,
}

impl TranspositionTable {
    pub fn new() -> TranspositionTable {
        TranspositionTable::default()
    }

    pub fn get(&self, key: &CanonicalKey) -> Option<u32> {
        let found = self.entries.read().unwrap().get(key).copied();
        let counter = if found.is_some() { &self.hits } else { &self.misses };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    pub fn insert(&self, key: CanonicalKey, value: u32) -> Result<()> {
        let mut map = self.entries.write().unwrap();
        match map.get(&key) {
            Some(&stored) if stored != value => Err(Error::TableConflict { stored, computed: value }),
            Some(_) => Ok(()),
            None => {
                map.insert(key, value);
                self.inserts.fetch_add(1, Ordering::Relaxed);
                Ok(())
            }
        }
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.entries.write().unwrap().clear();
    }

    pub fn stats(&self) -> TableStats {
        TableStats {
            entries: self.len() as u64,
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            inserts: self.inserts.load(Ordering::Relaxed),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let map = self.entries.read().unwrap();
        let mut entries: Vec<(String, u32)> =
            map.iter().map(|(k, &v)| (hex::encode(k.to_bytes()), v)).collect();
        entries.sort();
        Ok(serde_json::to_string(&TableFile { format: FORMAT.into(), version: VERSION, entries })?)
    }

    /// Merges entries from a serialized table, checking consistency.
    pub fn merge_json(&self, text: &str) -> Result<usize> {
        let file: TableFile = serde_json::from_str(text)?;
        if file.format != FORMAT || file.version != VERSION {
            return Err(Error::InvalidInput(format!(
                "unsupported cache file {} v{}",
                file.format, file.version
            )));
        }
        let n = file.entries.len();
        for (hex_key, value) in file.entries {
            let bytes = hex::decode(&hex_key)
                .map_err(|e| Error::InvalidInput(format!("bad key {hex_key}: {e}")))?;
            self.insert(CanonicalKey::from_bytes(&bytes)?, value)?;
        }
        Ok(n)
    }

    pub fn load(path: &Path) -> Result<TranspositionTable> {
        let table = TranspositionTable::new();
        if path.exists() {
            table.merge_json(&fs::read_to_string(path)?)?;
        }
        Ok(table)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, self.to_json()?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }
}
