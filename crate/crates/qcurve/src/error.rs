use std::path::PathBuf;

pub type Result<T, E = StoreError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error(transparent)]
    Core(#[from] qcurve_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed snapshot: {0}")]
    Malformed(String),
    #[error(
        "snapshot is for level {found}, character conductor {conductor}; expected level {expected}"
    )]
    WrongSpace {
        expected: u64,
        found: u64,
        conductor: u64,
    },
    #[error("space summary mismatch for q = {q}: {detail}")]
    SummaryMismatch { q: u32, detail: String },
    #[error("coverage unavailable, provide snapshot (no public newform data for q = {0})")]
    CoverageUnavailable(u32),
    #[error("offline mode and no cached data for q = {0}")]
    NotCached(u32),
    #[error("network: {0}")]
    Network(String),
    #[error("config: {0}")]
    Config(String),
}

impl StoreError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }
}
