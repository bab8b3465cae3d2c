//! Content-addressed stage cache: one file per stage artifact, named by the
//! SHA-256 of the engine version, instance, stage and stage parameters.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::Instance;
use crate::error::{CliError, Result};

pub const CACHE_ENV: &str = "CELLQ_CACHE";
pub const ENGINE_VERSION: &str = concat!("cellq-", env!("CARGO_PKG_VERSION"));

#[derive(Serialize)]
struct KeyMaterial<'a, P: Serialize> {
    engine: &'a str,
    instance: &'a Instance,
    stage: &'a str,
    params: &'a P,
}

pub fn key<P: Serialize>(instance: &Instance, stage: &str, params: &P) -> String {
    let material = KeyMaterial { engine: ENGINE_VERSION, instance, stage, params };
    let bytes = serde_json::to_vec(&material).expect("cache key serializes");
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// An explicit directory wins, then `CELLQ_CACHE`, then the user cache
    /// directory.
    pub fn locate(explicit: Option<&Path>) -> Self {
        if let Some(d) = explicit {
            return Cache::new(d);
        }
        if let Some(d) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
            return Cache::new(d);
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
            .unwrap_or_else(|| PathBuf::from("."));
        Cache::new(base.join("cellq"))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(&key[..2]).join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<Vec<u8>> {
        fs::read(self.path(key)).ok()
    }

    /// Writes through a temporary file so readers never see partial entries.
    pub fn put(&self, key: &str, bytes: &[u8]) -> Result<()> {
        let path = self.path(key);
        let parent = path.parent().expect("entry has a parent");
        fs::create_dir_all(parent).map_err(CliError::io(parent))?;
        let tmp = parent.join(format!(".{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, bytes).map_err(CliError::io(&tmp))?;
        fs::rename(&tmp, &path).map_err(CliError::io(&path))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(orbits: &str) -> Instance {
        Instance::new("A", 1, orbits).unwrap()
    }

    #[test]
    fn keys_separate_every_input() {
        let k = key(&inst("1;-"), "alg", &());
        assert_eq!(k, key(&inst("1;-"), "alg", &()));
        assert_eq!(k.len(), 64);
        assert_ne!(k, key(&inst("-;1"), "alg", &()));
        assert_ne!(k, key(&inst("1;-"), "reps", &()));
        assert_ne!(key(&inst("1;-"), "reps", &1u64), key(&inst("1;-"), "reps", &2u64));
    }

    #[test]
    fn entries_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let k = key(&inst("1;-"), "alg", &());
        assert_eq!(cache.get(&k), None);
        cache.put(&k, b"{}\n").unwrap();
        assert_eq!(cache.get(&k).as_deref(), Some(&b"{}\n"[..]));
    }

    #[test]
    fn explicit_directory_wins() {
        assert_eq!(Cache::locate(Some(Path::new("/x/y"))).dir(), Path::new("/x/y"));
    }
}
