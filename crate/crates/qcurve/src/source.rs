//! Where a newform space comes from: an explicit snapshot, the cache, the
//! bundled files for the publicly covered levels, or the network.

use std::path::PathBuf;

use qcurve_core::quadfield::check_q;

use crate::cache::{Cache, CacheKey};
use crate::error::{Result, StoreError};
use crate::lmfdb::{HttpTransport, LmfdbClient, COVERED_Q, DEFAULT_BASE};
use crate::snapshot::{self, Snapshot};

/// Prime range stored per space.
pub const STORE_RANGE: (u64, u64) = (3, 100);

const BUNDLED_17: &str = include_str!("../../../data/snapshots/q17.json");
const BUNDLED_41: &str = include_str!("../../../data/snapshots/q41.json");

pub fn bundled(q: u32) -> Option<Result<Snapshot>> {
    match q {
        17 => Some(snapshot::parse(BUNDLED_17)),
        41 => Some(snapshot::parse(BUNDLED_41)),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Snapshot,
    Cache,
    Bundled,
    Network,
}

impl Origin {
    pub fn name(self) -> &'static str {
        match self {
            Origin::Snapshot => "snapshot",
            Origin::Cache => "cache",
            Origin::Bundled => "bundled",
            Origin::Network => "network",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SourceOptions {
    pub snapshot: Option<PathBuf>,
    pub offline: bool,
    pub cache: Cache,
    pub base_url: String,
}

impl SourceOptions {
    pub fn new(snapshot: Option<PathBuf>, offline: bool) -> Self {
        Self {
            snapshot,
            offline,
            cache: Cache::from_env(),
            base_url: DEFAULT_BASE.to_string(),
        }
    }
}

fn key(q: u32) -> CacheKey {
    CacheKey::for_q(q, STORE_RANGE.0, STORE_RANGE.1)
}

fn fetch_network(q: u32, opts: &SourceOptions) -> Result<Snapshot> {
    let client = LmfdbClient::new(opts.base_url.clone(), HttpTransport::default());
    client.fetch_space(q, STORE_RANGE.0, STORE_RANGE.1)
}

/// Load the space for `q`: snapshot, then cache, then bundled data, then
/// the network unless offline.
pub fn load(q: u64, opts: &SourceOptions) -> Result<(Snapshot, Origin)> {
    let q = check_q(q)?;
    if let Some(path) = &opts.snapshot {
        let s = snapshot::read(path)?;
        if s.q != q {
            return Err(StoreError::Malformed(format!(
                "{} holds q = {}, not {q}",
                path.display(),
                s.q
            )));
        }
        return Ok((s, Origin::Snapshot));
    }
    if let Some(s) = opts.cache.get(&key(q))? {
        return Ok((s, Origin::Cache));
    }
    if let Some(s) = bundled(q) {
        return Ok((s?, Origin::Bundled));
    }
    if !COVERED_Q.contains(&q) {
        return Err(StoreError::CoverageUnavailable(q));
    }
    if opts.offline {
        return Err(StoreError::NotCached(q));
    }
    Ok((fetch_network(q, opts)?, Origin::Network))
}

/// Populate the cache for `q`. A cache hit does no other work. Without a
/// snapshot the network is tried, falling back to bundled data.
pub fn fetch(q: u64, opts: &SourceOptions) -> Result<(Snapshot, Origin)> {
    let q = check_q(q)?;
    if let Some(s) = opts.cache.get(&key(q))? {
        if opts.snapshot.is_none() {
            return Ok((s, Origin::Cache));
        }
    }
    let (s, origin) = if let Some(path) = &opts.snapshot {
        (snapshot::read(path)?, Origin::Snapshot)
    } else if !COVERED_Q.contains(&q) {
        return Err(StoreError::CoverageUnavailable(q));
    } else if opts.offline {
        (
            bundled(q).ok_or(StoreError::NotCached(q))??,
            Origin::Bundled,
        )
    } else {
        match fetch_network(q, opts) {
            Ok(s) => (s, Origin::Network),
            Err(e) => {
                log::warn!("network fetch failed ({e}); using bundled data");
                (bundled(q).ok_or(e)??, Origin::Bundled)
            }
        }
    };
    if s.q != q {
        return Err(StoreError::Malformed(format!(
            "data holds q = {}, not {q}",
            s.q
        )));
    }
    opts.cache.put(&key(q), &s)?;
    Ok((s, origin))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(dir: &std::path::Path) -> SourceOptions {
        SourceOptions {
            snapshot: None,
            offline: true,
            cache: Cache::new(dir),
            base_url: "http://127.0.0.1:9".into(),
        }
    }

    #[test]
    fn uncovered_levels_need_a_snapshot() {
        let dir = tempfile::tempdir().unwrap();
        for q in [89, 97] {
            let err = load(q, &opts(dir.path())).unwrap_err();
            assert!(matches!(err, StoreError::CoverageUnavailable(_)));
            assert!(err
                .to_string()
                .contains("coverage unavailable, provide snapshot"));
            assert!(matches!(
                fetch(q, &opts(dir.path())),
                Err(StoreError::CoverageUnavailable(_))
            ));
        }
    }

    #[test]
    fn fetch_then_cache_hit() {
        let dir = tempfile::tempdir().unwrap();
        let o = opts(dir.path());
        let (s, origin) = fetch(17, &o).unwrap();
        assert_eq!(origin, Origin::Bundled);
        assert_eq!(s.classes.len(), 6);
        let (again, origin) = fetch(17, &o).unwrap();
        assert_eq!(origin, Origin::Cache);
        assert_eq!(again, s);
        assert_eq!(load(17, &o).unwrap().1, Origin::Cache);
    }
}
