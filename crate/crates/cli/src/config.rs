//! Flag and config-file resolution.
//!
//! A config file is flat `key = value` text whose keys are the long flag
//! names without the leading dashes (`kperp = 0.25,0.5,1`, `rel-tol = 1e-8`). Flags override the file,
//! the file overrides the built-in defaults, and a key the command does not
//! take is rejected.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::CliError;

pub struct FileValues {
    path: Option<PathBuf>,
    values: BTreeMap<String, String>,
    used: BTreeSet<String>,
}

impl FileValues {
    pub fn empty() -> Self {
        Self {
            path: None,
            values: BTreeMap::new(),
            used: BTreeSet::new(),
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let mut out = Self::parse(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        out.path = Some(path.to_path_buf());
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", i + 1))?;
            let key = k.trim().to_string();
            if values.insert(key.clone(), v.trim().to_string()).is_some() {
                return Err(format!("line {}: duplicate key {key:?}", i + 1));
            }
        }
        Ok(Self {
            path: None,
            values,
            used: BTreeSet::new(),
        })
    }

    fn take(&mut self, key: &str) -> Option<String> {
        let v = self.values.get(key).cloned();
        if v.is_some() {
            self.used.insert(key.to_string());
        }
        v
    }

    fn origin(&self) -> String {
        match &self.path {
            Some(p) => p.display().to_string(),
            None => "config".to_string(),
        }
    }

    pub fn value<T: FromStr>(&mut self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.optional(flag, key)?.unwrap_or(default))
    }

    pub fn optional<T: FromStr>(&mut self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            self.used.insert(key.to_string());
            return Ok(flag);
        }
        match self.take(key) {
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|e| CliError::Usage(format!("{}: {key} = {raw:?}: {e}", self.origin()))),
            None => Ok(None),
        }
    }

    pub fn list(&mut self, flag: Option<Vec<f64>>, key: &str, default: &[f64]) -> Result<Vec<f64>, CliError> {
        if let Some(v) = flag {
            self.used.insert(key.to_string());
            return Ok(v);
        }
        match self.take(key) {
            Some(raw) => parse_list(&raw).map_err(|e| CliError::Usage(format!("{}: {key}: {e}", self.origin()))),
            None => Ok(default.to_vec()),
        }
    }

    /// Rejects file keys the command never asked for.
    pub fn finish(self) -> Result<(), CliError> {
        let unused: Vec<_> = self
            .values
            .keys()
            .filter(|k| !self.used.contains(*k))
            .cloned()
            .collect();
        if unused.is_empty() {
            Ok(())
        } else {
            Err(CliError::Usage(format!(
                "{}: keys not accepted by this command: {}",
                self.origin(),
                unused.join(", ")
            )))
        }
    }
}

pub fn parse_list(raw: &str) -> Result<Vec<f64>, String> {
    if raw.trim().is_empty() {
        return Ok(Vec::new());
    }
    raw.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}")))
        .collect()
}
