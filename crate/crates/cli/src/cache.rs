//! On-disk cache of symbolic renormalised values.
//!
//! The file is a JSON object `{"version": N, "entries": {...}}` keyed by
//! `mode|signature|order`. A file written under a different version is
//! ignored and replaced on the next save.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use qzeta_core::arith::RatFunc;
use qzeta_core::characters::{NormalizationMode, Signature};
use serde::{Deserialize, Serialize};

use crate::record::RatFuncJson;

/// Bumped whenever the truncation policy or the value encoding changes.
pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Default, Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    entries: BTreeMap<String, RatFuncJson>,
}

#[derive(Debug)]
pub struct Cache {
    path: Option<PathBuf>,
    file: CacheFile,
    dirty: bool,
    pub hits: usize,
    pub misses: usize,
}

impl Cache {
    /// A cache that never stores anything.
    pub fn disabled() -> Self {
        Self { path: None, file: CacheFile { version: CACHE_VERSION, ..Default::default() }, dirty: false, hits: 0, misses: 0 }
    }

    /// Opens `path`; a missing file starts empty. Unreadable or outdated
    /// contents are discarded with a warning on stderr.
    pub fn open(path: &Path) -> io::Result<Self> {
        let mut cache = Self::disabled();
        cache.path = Some(path.to_path_buf());
        match fs::read_to_string(path) {
            Ok(text) => match serde_json::from_str::<CacheFile>(&text) {
                Ok(file) if file.version == CACHE_VERSION => cache.file = file,
                Ok(file) => eprintln!(
                    "warning: cache {} has version {}, expected {CACHE_VERSION}; starting fresh",
                    path.display(),
                    file.version
                ),
                Err(e) => eprintln!("warning: cache {} is unreadable ({e}); starting fresh", path.display()),
            },
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        Ok(cache)
    }

    pub fn is_enabled(&self) -> bool {
        self.path.is_some()
    }

    pub fn key(mode: NormalizationMode, sig: &Signature, order: i64) -> String {
        format!("{}|{sig}|{order}", mode.tag())
    }

    pub fn get(&mut self, key: &str) -> Option<RatFunc> {
        if !self.is_enabled() {
            return None;
        }
        match self.file.entries.get(key).and_then(|j| j.to_ratfunc().ok()) {
            Some(v) => {
                self.hits += 1;
                Some(v)
            }
            None => {
                self.misses += 1;
                None
            }
        }
    }

    pub fn put(&mut self, key: String, value: &RatFunc) {
        if self.is_enabled() {
            self.file.entries.insert(key, RatFuncJson::from_ratfunc(value));
            self.dirty = true;
        }
    }

    pub fn len(&self) -> usize {
        self.file.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.file.entries.is_empty()
    }

    /// Writes through a temporary file so a crash never leaves half a cache.
    pub fn save(&mut self) -> io::Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        if !self.dirty {
            return Ok(());
        }
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string_pretty(&self.file).map_err(io::Error::other)?)?;
        fs::rename(&tmp, path)?;
        self.dirty = false;
        Ok(())
    }
}
