//! Flat `key = value` config files. A file supplies the same settings
//! as command-line flags; flags take precedence over the file, and the
//! file takes precedence over built-in defaults.

use crate::error::{OscillentError, Result};
use std::collections::BTreeMap;
use std::path::Path;

/// Keys a config file may set, matching the long flag names.
pub const ALLOWED_KEYS: &[&str] = &[
    "omega",
    "Omega",
    "C",
    "hbar",
    "delta-cell",
    "n",
    "m",
    "E1",
    "E2",
    "method",
    "samples",
    "seed",
    "grid-points",
    "jobs",
    "strict",
    "json",
    "out",
    "vary",
    "from",
    "to",
    "points",
];

/// Parsed config file: a flat map from flag name to raw value text.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    /// Parses `key = value` lines. Blank lines and `#` comments are
    /// skipped; later entries override earlier ones; unknown keys are
    /// rejected so typos fail loudly.
    pub fn parse(text: &str) -> Result<ConfigFile> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                OscillentError::Config(format!(
                    "line {}: expected `key = value`, got {raw:?}",
                    idx + 1
                ))
            })?;
            let key = key.trim();
            let value = value.trim();
            if !ALLOWED_KEYS.contains(&key) {
                return Err(OscillentError::Config(format!(
                    "line {}: unknown key {key:?}",
                    idx + 1
                )));
            }
            if value.is_empty() {
                return Err(OscillentError::Config(format!(
                    "line {}: key {key:?} has no value",
                    idx + 1
                )));
            }
            entries.insert(key.to_string(), value.to_string());
        }
        Ok(ConfigFile { entries })
    }

    pub fn load(path: &Path) -> Result<ConfigFile> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            OscillentError::Config(format!("cannot read {}: {e}", path.display()))
        })?;
        Self::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Typed lookup; a present but malformed value is an error rather
    /// than a silent fallback.
    pub fn get_parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|_| {
                OscillentError::Config(format!(
                    "key {key:?}: cannot parse {raw:?} as {}",
                    std::any::type_name::<T>()
                ))
            }),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
