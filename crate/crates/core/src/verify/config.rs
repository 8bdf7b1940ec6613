use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

/// Run parameters. The file format is flat `key = value` lines; `#` starts a comment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Highest power of `q` in the character comparisons.
    pub order: i64,
    /// Norm bound for the generic short-vector search on the Leech lattice.
    pub enum_norm_bound: i64,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    /// Sample label pairs instead of checking all `6561^2`.
    pub sampled: bool,
    pub sample_pairs: usize,
    pub twist_order: usize,
    /// Random pairs for the additivity of `eta`.
    pub eta_samples: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            order: 4,
            enum_norm_bound: 4,
            seed: 1,
            cache_dir: None,
            sampled: false,
            sample_pairs: 20_000,
            twist_order: 8,
            eta_samples: 10_000,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::Parse(format!("bad value {value:?} for {key}")))
}

impl Config {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim().replace('_', "-").as_str() {
            "order" => self.order = parse(key, value)?,
            "enum-norm-bound" => self.enum_norm_bound = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "cache" | "cache-dir" => self.cache_dir = if value.is_empty() { None } else { Some(value.into()) },
            "sampled" => self.sampled = parse(key, value)?,
            "sample-pairs" => self.sample_pairs = parse(key, value)?,
            "twist-order" => self.twist_order = parse(key, value)?,
            "eta-samples" => self.eta_samples = parse(key, value)?,
            other => return Err(Error::Parse(format!("unknown config key {other:?}"))),
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=12).contains(&self.order) {
            return Err(Error::Parse(format!("order {} is outside 1..=12", self.order)));
        }
        if !(2..=8).contains(&self.enum_norm_bound) || self.enum_norm_bound % 2 != 0 {
            return Err(Error::Parse(format!("enum-norm-bound {} must be 2, 4, 6 or 8", self.enum_norm_bound)));
        }
        if self.twist_order > crate::twist::MAX_ORDER {
            return Err(Error::Parse(format!("twist-order {} exceeds {}", self.twist_order, crate::twist::MAX_ORDER)));
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut c = Config::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse(format!("line {}: expected key = value", n + 1)))?;
            c.set(k, v)?;
        }
        Ok(c)
    }

    pub fn echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("order".into(), self.order.to_string());
        m.insert("enum-norm-bound".into(), self.enum_norm_bound.to_string());
        m.insert("seed".into(), self.seed.to_string());
        m.insert("cache".into(), self.cache_dir.as_ref().map_or(String::new(), |p| p.display().to_string()));
        m.insert("sampled".into(), self.sampled.to_string());
        m.insert("sample-pairs".into(), self.sample_pairs.to_string());
        m.insert("twist-order".into(), self.twist_order.to_string());
        m.insert("eta-samples".into(), self.eta_samples.to_string());
        m
    }
}
