//! Flat `key = value` config files and flag/file/default merging.
//!
//! Explicit flags always override file values; file values override the
//! built-in defaults. Numeric values accept scientific notation.

use std::collections::BTreeMap;
use std::path::Path;

/// Values read from a config file, keyed by flag name.
#[derive(Debug, Default, Clone)]
pub struct FileConfig {
    entries: BTreeMap<String, String>,
}

pub const KNOWN_KEYS: &[&str] = &[
    "count",
    "limit",
    "scale",
    "interval",
    "fig2_interval",
    "k2_interval_1",
    "k2_interval_2",
    "k2_interval_3",
    "max_lag",
    "q",
    "flip_prob",
    "period_T",
    "realizations",
    "dt",
    "t_end",
    "transient",
    "threshold",
    "seed",
    "figure",
    "out",
];

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected `key = value`", lineno + 1))?;
            let key = key.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(format!(
                    "config line {}: unknown key `{key}` (valid keys: {})",
                    lineno + 1,
                    KNOWN_KEYS.join(", ")
                ));
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(Self { entries })
    }

    fn get<T, F>(&self, key: &str, parse: F) -> Result<Option<T>, String>
    where
        F: Fn(&str) -> Result<T, String>,
    {
        match self.entries.get(key) {
            None => Ok(None),
            Some(raw) => parse(raw)
                .map(Some)
                .map_err(|e| format!("config key `{key}`: {e}")),
        }
    }

    pub fn usize_value(&self, key: &str) -> Result<Option<usize>, String> {
        self.get(key, parse_usize)
    }

    pub fn u64_value(&self, key: &str) -> Result<Option<u64>, String> {
        self.get(key, parse_u64)
    }

    pub fn f64_value(&self, key: &str) -> Result<Option<f64>, String> {
        self.get(key, parse_f64)
    }

    pub fn interval_value(&self, key: &str) -> Result<Option<(i64, i64)>, String> {
        self.get(key, parse_interval)
    }

    pub fn string_value(&self, key: &str) -> Option<String> {
        self.entries.get(key).cloned()
    }
}

pub fn parse_f64(raw: &str) -> Result<f64, String> {
    raw.trim()
        .parse::<f64>()
        .map_err(|_| format!("`{raw}` is not a number"))
}

/// Integers may be written in scientific notation (`2e4`).
pub fn parse_usize(raw: &str) -> Result<usize, String> {
    let v = parse_f64(raw)?;
    if v < 0.0 || v.fract() != 0.0 || v > usize::MAX as f64 {
        return Err(format!("`{raw}` is not a non-negative integer"));
    }
    Ok(v as usize)
}

pub fn parse_u64(raw: &str) -> Result<u64, String> {
    let v = parse_f64(raw)?;
    if v < 0.0 || v.fract() != 0.0 || v > u64::MAX as f64 {
        return Err(format!("`{raw}` is not a non-negative integer"));
    }
    Ok(v as u64)
}

/// `start:end`, both sides numeric (scientific notation welcome).
pub fn parse_interval(raw: &str) -> Result<(i64, i64), String> {
    let (a, b) = raw
        .split_once(':')
        .ok_or_else(|| format!("`{raw}` is not an interval; expected `start:end`"))?;
    let start = parse_f64(a)?;
    let end = parse_f64(b)?;
    if start.fract() != 0.0 || end.fract() != 0.0 {
        return Err(format!("`{raw}`: interval bounds must be integers"));
    }
    if start >= end {
        return Err(format!("`{raw}`: interval start must be below its end"));
    }
    Ok((start as i64, end as i64))
}
