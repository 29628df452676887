//! Flat key-value config files.  Flags win over config entries, config
//! entries win over defaults; the thread-count environment variable is
//! consulted only when neither a flag nor a config entry names it.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::Failure;

#[derive(Debug, Default)]
pub struct FileConfig {
    entries: HashMap<String, String>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<FileConfig, Failure> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let mut entries = HashMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Failure::Usage(format!(
                    "{}:{}: expected `key = value`",
                    path.display(),
                    lineno + 1
                )));
            };
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(FileConfig { entries })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, Failure> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| Failure::Usage(format!("config key {key} has invalid value {raw:?}"))),
        }
    }

    pub fn get_path(&self, key: &str) -> Option<PathBuf> {
        self.entries.get(key).map(PathBuf::from)
    }
}

/// Thread count: flag, then config, then the environment variable.
pub fn resolve_threads(flag: Option<usize>, config: &FileConfig) -> Result<Option<usize>, Failure> {
    if flag.is_some() {
        return Ok(flag);
    }
    if let Some(n) = config.get::<usize>("threads")? {
        return Ok(Some(n));
    }
    match std::env::var("PGRADED_THREADS") {
        Ok(raw) => {
            let n: usize = raw.parse().map_err(|_| {
                Failure::Usage(format!("PGRADED_THREADS has invalid value {raw:?}"))
            })?;
            Ok(Some(n))
        }
        Err(_) => Ok(None),
    }
}
