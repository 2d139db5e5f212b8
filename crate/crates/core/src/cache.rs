//! Append-only JSON-lines store of computed counts.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::dwork::{DworkParams, GroupElement};
use crate::error::{Error, Result};

/// What was counted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CountKind {
    Plain,
    Twisted(GroupElement),
    Quotient,
}

impl CountKind {
    pub fn tag(&self) -> String {
        match self {
            CountKind::Plain => "plain".into(),
            CountKind::Twisted(g) => format!("twisted:{}", g.label()),
            CountKind::Quotient => "quotient".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
    pub n: usize,
    pub lambda: Vec<u32>,
    pub m: u32,
    pub kind: String,
}

impl CacheKey {
    pub fn new(params: &DworkParams, m: u32, kind: &CountKind) -> Self {
        let field = params.field();
        CacheKey {
            p: field.p(),
            k: field.k(),
            modulus: field.descriptor().modulus.clone(),
            n: params.n(),
            lambda: field.coeffs(params.lambda()),
            m,
            kind: kind.tag(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    #[serde(flatten)]
    pub key: CacheKey,
    pub count: u64,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

/// Counts loaded from a cache file, with appends going back to it.
#[derive(Debug)]
pub struct CountCache {
    path: Option<PathBuf>,
    entries: HashMap<CacheKey, u64>,
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Cache(format!("{}: {e}", path.display()))
}

impl CountCache {
    /// A cache that never touches disk.
    pub fn in_memory() -> Self {
        CountCache { path: None, entries: HashMap::new() }
    }

    /// Loads `path` if it exists. Unparseable lines are skipped with a warning.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let mut entries = HashMap::new();
        match File::open(&path) {
            Ok(file) => {
                for (i, line) in BufReader::new(file).lines().enumerate() {
                    let line = line.map_err(|e| io_err(&path, e))?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    match serde_json::from_str::<CacheRecord>(&line) {
                        Ok(rec) => {
                            entries.entry(rec.key).or_insert(rec.count);
                        }
                        Err(e) => log::warn!("{}:{}: skipping bad cache line: {e}", path.display(), i + 1),
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(io_err(&path, e)),
        }
        Ok(CountCache { path: Some(path), entries })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &CacheKey) -> Option<u64> {
        self.entries.get(key).copied()
    }

    /// Records a count. A key that is already present is left alone.
    pub fn insert(&mut self, key: CacheKey, count: u64) -> Result<()> {
        if self.entries.contains_key(&key) {
            return Ok(());
        }
        if let Some(path) = &self.path {
            let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
            let record = CacheRecord { key: key.clone(), count, timestamp };
            let mut line = serde_json::to_string(&record).map_err(|e| Error::Cache(e.to_string()))?;
            line.push('\n');
            let mut file = OpenOptions::new().create(true).append(true).open(path).map_err(|e| io_err(path, e))?;
            file.lock().map_err(|e| io_err(path, e))?;
            let written = file.write_all(line.as_bytes()).and_then(|_| file.flush());
            file.unlock().map_err(|e| io_err(path, e))?;
            written.map_err(|e| io_err(path, e))?;
        }
        self.entries.insert(key, count);
        Ok(())
    }

    /// The cached count for `key`, or `compute()` recorded under it. The flag
    /// is true on a hit.
    pub fn get_or_compute(&mut self, key: CacheKey, compute: impl FnOnce() -> Result<u64>) -> Result<(u64, bool)> {
        if let Some(count) = self.get(&key) {
            return Ok((count, true));
        }
        let count = compute()?;
        self.insert(key, count)?;
        Ok((count, false))
    }
}
