//! A content-addressed memo for verification payloads.
//!
//! The key hashes the schema version, the command name, and the canonical
//! JSON of the full echoed inputs (which include the seed), so a hit can
//! only ever return the payload the same run would recompute. Entries are
//! plain JSON files written atomically (write-then-rename); the cache is
//! read only by the command that wrote it and never changes any payload.

use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::envelope::{Failure, SCHEMA_VERSION};

/// Hex SHA-256 over `schema_version \n command \n canonical(inputs)`.
///
/// `inputs` is a `serde_json::Value`, whose object keys are already stored
/// sorted, so `to_string` is canonical.
pub fn cache_key(command: &str, inputs: &Value) -> String {
    let mut hasher = Sha256::new();
    hasher.update(SCHEMA_VERSION.as_bytes());
    hasher.update(b"\n");
    hasher.update(command.as_bytes());
    hasher.update(b"\n");
    hasher.update(serde_json::to_string(inputs).expect("inputs serialize").as_bytes());
    let digest = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for byte in digest {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex
}

fn entry_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// Returns the stored payload, or `None` on a miss or an unreadable entry
/// (a corrupt entry falls back to recomputation rather than failing).
pub fn lookup(dir: &Path, key: &str) -> Option<Value> {
    let text = std::fs::read_to_string(entry_path(dir, key)).ok()?;
    serde_json::from_str(&text).ok()
}

/// Stores a payload atomically: write a sibling temp file, then rename.
pub fn store(dir: &Path, key: &str, payload: &Value) -> Result<(), Failure> {
    std::fs::create_dir_all(dir)
        .map_err(|e| Failure::io(&format!("creating cache dir {}", dir.display()), &e))?;
    let tmp = dir.join(format!("{key}.json.tmp"));
    let text = serde_json::to_string_pretty(payload).expect("payload serializes");
    std::fs::write(&tmp, text)
        .map_err(|e| Failure::io(&format!("writing cache entry {}", tmp.display()), &e))?;
    std::fs::rename(&tmp, entry_path(dir, key))
        .map_err(|e| Failure::io(&format!("publishing cache entry for {key}"), &e))
}
