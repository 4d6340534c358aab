//! Persistent count cache: one line-delimited JSON file per class
//! descriptor, records `{"class": ..., "n": ..., "count": "<decimal>"}`.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::sync::Mutex;

use num::BigUint;
use num::Num;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct CacheRecord {
    class: String,
    n: u64,
    count: String,
}

/// Directory-backed cache of count sequences. Reads are lock-free; writes
/// are serialized through a single mutex.
pub struct CountCache {
    dir: PathBuf,
    write_lock: Mutex<()>,
}

impl CountCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(CountCache {
            dir,
            write_lock: Mutex::new(()),
        })
    }

    fn file_for(&self, descriptor: &str) -> PathBuf {
        self.dir.join(format!("{}.jsonl", sanitize(descriptor)))
    }

    /// All cached `(n, count)` pairs for a descriptor.
    pub fn load(&self, descriptor: &str) -> Result<BTreeMap<u64, BigUint>> {
        let path = self.file_for(descriptor);
        let mut out = BTreeMap::new();
        if !path.exists() {
            return Ok(out);
        }
        let reader = BufReader::new(fs::File::open(&path)?);
        for line in reader.lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: CacheRecord = serde_json::from_str(&line)
                .map_err(|e| Error::CacheFormat(format!("{}: {e}", path.display())))?;
            if rec.class != descriptor {
                return Err(Error::CacheFormat(format!(
                    "{}: record for class {:?} in file for {:?}",
                    path.display(),
                    rec.class,
                    descriptor
                )));
            }
            let count = BigUint::from_str_radix(&rec.count, 10)
                .map_err(|_| Error::CacheFormat(format!("bad count {:?}", rec.count)))?;
            out.insert(rec.n, count);
        }
        Ok(out)
    }

    pub fn append(&self, descriptor: &str, n: u64, count: &BigUint) -> Result<()> {
        let _guard = self.write_lock.lock().expect("cache writer lock poisoned");
        let rec = CacheRecord {
            class: descriptor.to_string(),
            n,
            count: count.to_string(),
        };
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(self.file_for(descriptor))?;
        let line = serde_json::to_string(&rec).expect("cache record serializes");
        writeln!(file, "{line}")?;
        Ok(())
    }
}

fn sanitize(descriptor: &str) -> String {
    descriptor
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_descriptor_isolation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = CountCache::open(dir.path()).unwrap();
        cache.append("A:5", 3, &BigUint::from(6u32)).unwrap();
        cache.append("A:5", 4, &BigUint::from(24u32)).unwrap();
        cache.append("mono:4", 4, &BigUint::from(23u32)).unwrap();

        let a5 = cache.load("A:5").unwrap();
        assert_eq!(a5.len(), 2);
        assert_eq!(a5[&4], BigUint::from(24u32));
        let mono = cache.load("mono:4").unwrap();
        assert_eq!(mono.len(), 1);
        assert!(cache.load("B:5").unwrap().is_empty());
    }

    #[test]
    fn malformed_records_are_reported_as_cache_errors() {
        let dir = tempfile::tempdir().unwrap();
        let cache = CountCache::open(dir.path()).unwrap();
        std::fs::write(dir.path().join("A_5.jsonl"), "not json\n").unwrap();
        match cache.load("A:5") {
            Err(Error::CacheFormat(_)) => {}
            other => panic!("expected CacheFormat error, got {other:?}"),
        }
    }
}
