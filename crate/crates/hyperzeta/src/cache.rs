//! JSON-lines result cache with shard checkpoints.
//!
//! File layout: a header line with the run configuration, then for each
//! shard its records (one JSON object per line, enumeration order) followed
//! by a checkpoint marker carrying the shard index, its record count, and
//! an FNV-1a hash chained over the record lines. Appends never rewrite
//! earlier bytes, so a killed run leaves a valid prefix; resume truncates
//! to the last complete shard and recomputes the rest. No timestamps are
//! written, so identical configs produce byte-identical caches.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

/// One record per discriminant: the exact integer data plus the floating
/// eigenphases (shortest round-trip decimal, exact on re-read).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CacheRecord {
    pub schema_version: u32,
    pub q: u64,
    pub modulus: Vec<u64>,
    #[serde(rename = "D")]
    pub d: Vec<u64>,
    pub lambda: u32,
    pub delta: u32,
    pub lstar: Vec<i64>,
    pub thetas: Vec<f64>,
    #[serde(rename = "M")]
    pub m: i64,
    #[serde(rename = "N")]
    pub n: i64,
}

/// Header line: identifies the run; analysis commands refuse caches whose
/// header does not match their request.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CacheHeader {
    pub schema_version: u32,
    pub p: u64,
    pub e: u32,
    pub n: u32,
    pub mode: String,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Marker {
    checkpoint: u64,
    records: u64,
    hash: String,
}

pub const FNV_SEED: u64 = 0xcbf29ce484222325;

fn fnv1a(acc: u64, bytes: &[u8]) -> u64 {
    let mut h = acc;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Parse of a cache file: header, records of complete shards, and the byte
/// offset just past the last complete shard marker.
pub struct CacheScan {
    pub header: CacheHeader,
    pub complete_shards: u64,
    pub records: Vec<CacheRecord>,
    pub valid_bytes: u64,
}

pub fn scan_cache(path: &Path) -> Result<CacheScan> {
    let file = fs::File::open(path)
        .map_err(|e| Error::MissingCache(format!("{}: {e}", path.display())))?;
    let mut reader = BufReader::new(file);
    let mut line = String::new();
    let mut offset = 0u64;

    reader.read_line(&mut line)?;
    let header: CacheHeader = serde_json::from_str(line.trim_end())
        .map_err(|e| Error::CorruptCache(format!("bad header: {e}")))?;
    if header.schema_version != SCHEMA_VERSION {
        return Err(Error::IncompatibleCache(format!(
            "schema {} != {}",
            header.schema_version, SCHEMA_VERSION
        )));
    }
    offset += line.len() as u64;

    let mut records = Vec::new();
    let mut pending: Vec<CacheRecord> = Vec::new();
    let mut hash = FNV_SEED;
    let mut complete = 0u64;
    let mut valid_bytes = offset;
    loop {
        line.clear();
        let read = reader.read_line(&mut line)?;
        if read == 0 || !line.ends_with('\n') {
            break; // truncated tail: ignored so a killed run can resume
        }
        let trimmed = line.trim_end();
        if trimmed.contains("\"checkpoint\"") {
            let marker: Marker = match serde_json::from_str(trimmed) {
                Ok(m) => m,
                Err(_) => break,
            };
            if marker.checkpoint != complete {
                return Err(Error::CorruptCache(format!(
                    "checkpoint {} out of order (expected {})",
                    marker.checkpoint, complete
                )));
            }
            if marker.records != pending.len() as u64 || marker.hash != format!("{hash:016x}") {
                return Err(Error::CorruptCache(format!(
                    "checksum mismatch at shard {}",
                    marker.checkpoint
                )));
            }
            records.append(&mut pending);
            complete += 1;
            hash = FNV_SEED;
            valid_bytes = offset + read as u64;
        } else {
            let rec: CacheRecord = match serde_json::from_str(trimmed) {
                Ok(r) => r,
                Err(_) => break,
            };
            hash = fnv1a(hash, trimmed.as_bytes());
            pending.push(rec);
        }
        offset += read as u64;
    }
    Ok(CacheScan {
        header,
        complete_shards: complete,
        records,
        valid_bytes,
    })
}

/// Append-oriented writer.
pub struct CacheWriter {
    file: fs::File,
    shard: u64,
    hash: u64,
    pending: u64,
}

impl CacheWriter {
    pub fn create(path: &Path, header: &CacheHeader) -> Result<CacheWriter> {
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                fs::create_dir_all(dir)?;
            }
        }
        let mut file = fs::File::create(path)?;
        let line = serde_json::to_string(header)?;
        writeln!(file, "{line}")?;
        Ok(CacheWriter {
            file,
            shard: 0,
            hash: FNV_SEED,
            pending: 0,
        })
    }

    /// Reopen after `complete_shards` shards, truncating any partial tail.
    pub fn resume(path: &Path, valid_bytes: u64, complete_shards: u64) -> Result<CacheWriter> {
        let file = fs::OpenOptions::new().read(true).write(true).open(path)?;
        file.set_len(valid_bytes)?;
        let file = fs::OpenOptions::new().append(true).open(path)?;
        Ok(CacheWriter {
            file,
            shard: complete_shards,
            hash: FNV_SEED,
            pending: 0,
        })
    }

    pub fn write_record(&mut self, rec: &CacheRecord) -> Result<()> {
        let line = serde_json::to_string(rec)?;
        self.hash = fnv1a(self.hash, line.as_bytes());
        writeln!(self.file, "{line}")?;
        self.pending += 1;
        Ok(())
    }

    /// Close the current shard with a checkpoint marker.
    pub fn checkpoint(&mut self) -> Result<()> {
        let marker = Marker {
            checkpoint: self.shard,
            records: self.pending,
            hash: format!("{:016x}", self.hash),
        };
        let line = serde_json::to_string(&marker)?;
        writeln!(self.file, "{line}")?;
        self.file.flush()?;
        self.shard += 1;
        self.hash = FNV_SEED;
        self.pending = 0;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    fn record(i: i64) -> CacheRecord {
        CacheRecord {
            schema_version: SCHEMA_VERSION,
            q: 3,
            modulus: vec![0, 1],
            d: vec![i as u64 % 3, 1],
            lambda: 0,
            delta: 0,
            lstar: vec![1],
            thetas: vec![0.123456789012345678 * (i + 1) as f64],
            m: i,
            n: -i,
        }
    }

    fn header() -> CacheHeader {
        CacheHeader {
            schema_version: SCHEMA_VERSION,
            p: 3,
            e: 1,
            n: 5,
            mode: "full".into(),
            samples: 0,
            seed: 0,
        }
    }

    #[test]
    fn round_trip_bit_exact() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let mut w = CacheWriter::create(&path, &header()).unwrap();
        let recs: Vec<CacheRecord> = (0..10).map(record).collect();
        for (i, r) in recs.iter().enumerate() {
            w.write_record(r).unwrap();
            if i % 4 == 3 {
                w.checkpoint().unwrap();
            }
        }
        w.checkpoint().unwrap();
        let scan = scan_cache(&path).unwrap();
        assert_eq!(scan.records.len(), 10);
        for (a, b) in scan.records.iter().zip(&recs) {
            assert_eq!(a, b);
            assert_eq!(a.thetas[0].to_bits(), b.thetas[0].to_bits());
        }
    }

    #[test]
    fn truncated_tail_is_ignored_and_resumable() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let mut w = CacheWriter::create(&path, &header()).unwrap();
        for i in 0..4 {
            w.write_record(&record(i)).unwrap();
        }
        w.checkpoint().unwrap();
        for i in 4..6 {
            w.write_record(&record(i)).unwrap();
        }
        drop(w); // second shard never checkpointed
        let scan = scan_cache(&path).unwrap();
        assert_eq!(scan.complete_shards, 1);
        assert_eq!(scan.records.len(), 4);
        let mut w = CacheWriter::resume(&path, scan.valid_bytes, scan.complete_shards).unwrap();
        for i in 4..8 {
            w.write_record(&record(i)).unwrap();
        }
        w.checkpoint().unwrap();
        let scan = scan_cache(&path).unwrap();
        assert_eq!(scan.complete_shards, 2);
        assert_eq!(scan.records.len(), 8);
    }

    #[test]
    fn corrupted_record_is_detected() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let mut w = CacheWriter::create(&path, &header()).unwrap();
        for i in 0..4 {
            w.write_record(&record(i)).unwrap();
        }
        w.checkpoint().unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let tampered = text.replacen("\"M\":2", "\"M\":3", 1);
        assert_ne!(text, tampered);
        std::fs::write(&path, tampered).unwrap();
        assert!(matches!(scan_cache(&path), Err(Error::CorruptCache(_))));
    }
}
