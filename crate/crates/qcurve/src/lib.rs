//! Newform data handling and the `qcurve` pipeline on top of `qcurve-core`.

pub mod cache;
pub mod checks;
pub mod config;
pub mod error;
pub mod lmfdb;
pub mod pipeline;
pub mod report;
pub mod roots;
pub mod snapshot;
pub mod source;

pub use error::{Result, StoreError};

/// Exit codes of the command-line tool.
pub mod exit {
    pub const OK: i32 = 0;
    pub const ERROR: i32 = 1;
    pub const DATA_UNAVAILABLE: i32 = 3;
    pub const OUTCOME_MISMATCH: i32 = 4;
    pub const CHECK_FAILED: i32 = 5;
}
