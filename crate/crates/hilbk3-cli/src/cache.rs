//! On-disk cache of canonical JSON payloads, keyed by operation, arguments and code version.
//!
//! Each entry is one file `<operation>-<digest>.json` holding the full key next to the
//! payload. Entries written by another code version, or whose stored key differs from the
//! requested one, are ignored and overwritten.

use hilbk3::{Error, Result};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::path::PathBuf;

/// Version stamp written into every entry.
pub const CODE_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), "-", env!("CARGO_PKG_VERSION"), "-cache1");

/// A cache rooted at an optional directory; without one every lookup recomputes.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
    version: String,
}

impl Cache {
    /// A cache in `dir` for the current code version.
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self::with_version(dir, CODE_VERSION)
    }

    /// A cache in `dir` stamped with `version`.
    pub fn with_version(dir: Option<PathBuf>, version: &str) -> Self {
        Cache { dir, version: version.to_string() }
    }

    fn key(&self, op: &str, args: &[String]) -> Value {
        json!({ "operation": op, "arguments": args, "version": self.version })
    }

    fn path(&self, op: &str, key: &Value) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let digest = Sha256::digest(key.to_string().as_bytes());
        let hex: String = digest.iter().take(12).map(|b| format!("{b:02x}")).collect();
        Some(dir.join(format!("{op}-{hex}.json")))
    }

    /// The cached payload for `(op, args)`, or the result of `compute`, which is then stored.
    pub fn get_or_compute(&self, op: &str, args: &[String], compute: impl FnOnce() -> Result<Value>) -> Result<Value> {
        let key = self.key(op, args);
        let Some(path) = self.path(op, &key) else {
            return compute();
        };
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(entry) = serde_json::from_str::<Value>(&text) {
                if entry.get("key") == Some(&key) {
                    if let Some(p) = entry.get("payload") {
                        return Ok(p.clone());
                    }
                }
            }
        }
        let payload = compute()?;
        let entry = json!({ "key": key, "payload": payload });
        let dir = path.parent().expect("cache entries live in a directory");
        std::fs::create_dir_all(dir).map_err(|e| Error::InvalidArgument(format!("cache directory: {e}")))?;
        std::fs::write(&path, entry.to_string()).map_err(|e| Error::InvalidArgument(format!("cache write: {e}")))?;
        Ok(payload)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cell::Cell;

    fn tmp(name: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("hilbk3-cache-test-{name}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&d);
        d
    }

    #[test]
    fn hit_is_identical_and_skips_compute() {
        let dir = tmp("hit");
        let cache = Cache::new(Some(dir.clone()));
        let calls = Cell::new(0);
        let f = || {
            calls.set(calls.get() + 1);
            Ok(json!({ "rows": [1, -24, 252] }))
        };
        let a = cache.get_or_compute("expand", &["Delta".into(), "3".into()], f).unwrap();
        let b = cache.get_or_compute("expand", &["Delta".into(), "3".into()], f).unwrap();
        assert_eq!(a, b);
        assert_eq!(calls.get(), 1);
        let _ = std::fs::remove_dir_all(dir);
    }

    #[test]
    fn stale_version_is_ignored() {
        let dir = tmp("stale");
        let old = Cache::with_version(Some(dir.clone()), "old");
        old.get_or_compute("expand", &["F".into()], || Ok(json!("old payload"))).unwrap();
        let new = Cache::with_version(Some(dir.clone()), "new");
        let v = new.get_or_compute("expand", &["F".into()], || Ok(json!("fresh"))).unwrap();
        assert_eq!(v, json!("fresh"));
        let _ = std::fs::remove_dir_all(dir);
    }

    #[test]
    fn disabled_cache_always_computes() {
        let cache = Cache::new(None);
        let v = cache.get_or_compute("x", &[], || Ok(json!(1))).unwrap();
        assert_eq!(v, json!(1));
    }
}
