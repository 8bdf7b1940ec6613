//! On-disk caches: `theta/`, `bsgs/`, `series/` below the cache directory.
//! Unreadable or malformed entries are recomputed and overwritten.

use crate::error::Result;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug)]
pub struct Cache {
    root: Option<PathBuf>,
}

impl Cache {
    pub fn new(root: Option<&Path>) -> Self {
        Cache { root: root.map(Path::to_path_buf) }
    }

    fn path(&self, kind: &str, name: &str) -> Option<PathBuf> {
        self.root.as_ref().map(|r| r.join(kind).join(name))
    }

    /// Loads `kind/name` with `parse`, or computes, stores and returns a fresh value.
    pub fn get_or_compute<T>(
        &self,
        kind: &str,
        name: &str,
        parse: impl Fn(&str) -> Result<T>,
        render: impl Fn(&T) -> String,
        compute: impl FnOnce() -> Result<T>,
    ) -> Result<T> {
        let Some(path) = self.path(kind, name) else { return compute() };
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(v) = parse(&text) {
                return Ok(v);
            }
        }
        let v = compute()?;
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        fs::write(&path, render(&v))?;
        Ok(v)
    }

    /// Writes an export file; a no-op without a cache directory.
    pub fn export(&self, kind: &str, name: &str, text: &str) -> Result<()> {
        if let Some(path) = self.path(kind, name) {
            if let Some(dir) = path.parent() {
                fs::create_dir_all(dir)?;
            }
            fs::write(path, text)?;
        }
        Ok(())
    }
}
