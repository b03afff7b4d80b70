//! JSON-lines cache of classification verdicts.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde_json::Value;

pub type CacheKey = (String, usize, Vec<i64>);

/// Environment variable that overrides `--cache`.
pub const CACHE_ENV: &str = "SCHUBERT_CACHE";

pub struct VerdictCache {
    path: PathBuf,
    entries: HashMap<CacheKey, Value>,
}

fn key_of(v: &Value) -> Option<CacheKey> {
    let t = v.get("type")?.as_str()?.to_string();
    let rank = v.get("rank")?.as_u64()? as usize;
    let lambda = v
        .get("lambda")?
        .as_array()?
        .iter()
        .map(Value::as_i64)
        .collect::<Option<Vec<i64>>>()?;
    v.get("labels")?.as_array()?;
    Some((t, rank, lambda))
}

impl VerdictCache {
    /// Loads the cache; unreadable files and bad lines produce warnings only.
    pub fn load(path: &Path, warn: &mut dyn Write) -> Self {
        let mut entries = HashMap::new();
        match File::open(path) {
            Ok(f) => {
                for (i, line) in BufReader::new(f).lines().enumerate() {
                    let parsed = line
                        .ok()
                        .and_then(|l| serde_json::from_str::<Value>(&l).ok())
                        .and_then(|v| key_of(&v).map(|k| (k, v)));
                    match parsed {
                        Some((k, v)) => {
                            entries.insert(k, v);
                        }
                        None => {
                            let _ = writeln!(warn, "warning: ignoring corrupt cache line {} in {}", i + 1, path.display());
                        }
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => {
                let _ = writeln!(warn, "warning: cannot read cache {}: {e}", path.display());
            }
        }
        VerdictCache { path: path.to_path_buf(), entries }
    }

    pub fn get(&self, key: &CacheKey) -> Option<&Value> {
        self.entries.get(key)
    }

    pub fn insert(&mut self, record: Value, warn: &mut dyn Write) {
        let Some(k) = key_of(&record) else { return };
        let line = record.to_string();
        let res = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .and_then(|mut f| writeln!(f, "{line}"));
        if let Err(e) = res {
            let _ = writeln!(warn, "warning: cannot write cache {}: {e}", self.path.display());
        }
        self.entries.insert(k, record);
    }
}
