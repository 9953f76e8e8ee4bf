//! Opt-in on-disk result cache: one JSON record per line, storing raw integer
//! counts as decimal strings.

use crate::error::Result;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;

#[derive(Serialize, Deserialize)]
struct Record {
    key: String,
    count: String,
}

pub struct DiskCache {
    path: PathBuf,
    map: HashMap<String, BigUint>,
}

impl DiskCache {
    pub fn open(path: &std::path::Path) -> Result<Self> {
        let mut map = HashMap::new();
        if path.exists() {
            let file = std::fs::File::open(path)?;
            for line in BufReader::new(file).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec: Record = serde_json::from_str(&line)?;
                if let Ok(v) = rec.count.parse::<BigUint>() {
                    map.insert(rec.key, v);
                }
            }
        }
        Ok(DiskCache {
            path: path.to_path_buf(),
            map,
        })
    }

    pub fn get(&self, key: &str) -> Option<BigUint> {
        self.map.get(key).cloned()
    }

    pub fn put(&mut self, key: &str, count: &BigUint) -> Result<()> {
        if self.map.contains_key(key) {
            return Ok(());
        }
        self.map.insert(key.to_string(), count.clone());
        let rec = Record {
            key: key.to_string(),
            count: count.to_string(),
        };
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        writeln!(file, "{}", serde_json::to_string(&rec)?)?;
        Ok(())
    }
}
