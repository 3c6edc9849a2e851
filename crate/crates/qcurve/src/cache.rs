//! On-disk cache of newform spaces.
//!
//! Entries are keyed by level, character conductor and prime range. Each
//! entry is a snapshot file next to a `.sha256` file holding the hex digest
//! of its bytes; an entry whose digest does not match is treated as absent,
//! so an interrupted write never yields corrupt data.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Result, StoreError};
use crate::report::write_atomic;
use crate::snapshot::{self, Snapshot};

pub const CACHE_ENV: &str = "QCURVE_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub level: u64,
    pub char_conductor: u64,
    pub p_lo: u64,
    pub p_hi: u64,
}

impl CacheKey {
    pub fn for_q(q: u32, p_lo: u64, p_hi: u64) -> Self {
        Self {
            level: 2 * (q as u64).pow(2),
            char_conductor: q as u64,
            p_lo,
            p_hi,
        }
    }

    fn stem(&self) -> String {
        format!(
            "level{}_chi{}_p{}-{}",
            self.level, self.char_conductor, self.p_lo, self.p_hi
        )
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// `$QCURVE_CACHE_DIR`, else `$XDG_CACHE_HOME/qcurve`, else
    /// `~/.cache/qcurve`.
    pub fn from_env() -> Self {
        if let Some(d) = std::env::var_os(CACHE_ENV) {
            return Self::new(d);
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
            .unwrap_or_else(|| PathBuf::from("."));
        Self::new(base.join("qcurve"))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn data_path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.stem()))
    }

    fn hash_path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.sha256", key.stem()))
    }

    /// The cached snapshot, if present and intact.
    pub fn get(&self, key: &CacheKey) -> Result<Option<Snapshot>> {
        let path = self.data_path(key);
        let Ok(bytes) = std::fs::read(&path) else {
            return Ok(None);
        };
        let Ok(expected) = std::fs::read_to_string(self.hash_path(key)) else {
            return Ok(None);
        };
        if expected.trim() != digest(&bytes) {
            log::warn!("{}: digest mismatch, ignoring cache entry", path.display());
            return Ok(None);
        }
        let text = String::from_utf8(bytes).map_err(|e| StoreError::Malformed(e.to_string()))?;
        snapshot::parse(&text).map(Some)
    }

    /// Store `s`; the digest is written last.
    pub fn put(&self, key: &CacheKey, s: &Snapshot) -> Result<String> {
        let body = snapshot::to_json(s);
        let d = digest(body.as_bytes());
        let _ = std::fs::remove_file(self.hash_path(key));
        write_atomic(&self.data_path(key), body.as_bytes())?;
        write_atomic(&self.hash_path(key), format!("{d}\n").as_bytes())?;
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qcurve_core::newform::{CoeffData, NewformClass};
    use qcurve_core::poly::IntPoly;

    fn tiny() -> Snapshot {
        let class = NewformClass {
            label: "578.2.q17.z".into(),
            level: 578,
            char_modulus: 17,
            dim: 1,
            ap: [(3, CoeffData::Exact(IntPoly::from_i64(&[2, 1])))]
                .into_iter()
                .collect(),
        };
        Snapshot::new(17, vec![class])
    }

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let key = CacheKey::for_q(17, 3, 31);
        assert!(cache.get(&key).unwrap().is_none());
        cache.put(&key, &tiny()).unwrap();
        assert_eq!(cache.get(&key).unwrap(), Some(tiny()));
        std::fs::write(cache.data_path(&key), b"{}").unwrap();
        assert!(cache.get(&key).unwrap().is_none());
    }

    #[test]
    fn keys_separate_prime_ranges() {
        assert_ne!(
            CacheKey::for_q(17, 3, 31).stem(),
            CacheKey::for_q(17, 3, 97).stem()
        );
    }
}
