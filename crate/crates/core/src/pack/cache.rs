use std::collections::BTreeSet;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

/// Checksums of packs accepted without re-validation, one per line.
#[derive(Clone, Debug, Default)]
pub struct TrustedCache {
    path: Option<PathBuf>,
    entries: BTreeSet<String>,
}

impl TrustedCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Read the cache at `path`; a missing file is an empty cache.
    pub fn load(path: impl AsRef<Path>) -> io::Result<Self> {
        let path = path.as_ref().to_path_buf();
        let entries = match fs::read_to_string(&path) {
            Ok(s) => s
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::to_ascii_lowercase)
                .collect(),
            Err(e) if e.kind() == io::ErrorKind::NotFound => BTreeSet::new(),
            Err(e) => return Err(e),
        };
        Ok(TrustedCache { path: Some(path), entries })
    }

    pub fn contains(&self, checksum: &str) -> bool {
        self.entries.contains(&checksum.to_ascii_lowercase())
    }

    pub fn insert(&mut self, checksum: &str) -> bool {
        self.entries.insert(checksum.to_ascii_lowercase())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Write back to the file the cache was loaded from.
    pub fn save(&self) -> io::Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        let mut s = String::new();
        for e in &self.entries {
            s.push_str(e);
            s.push('\n');
        }
        fs::write(path, s)
    }
}
