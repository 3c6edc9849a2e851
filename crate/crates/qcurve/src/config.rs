//! Run configuration: a TOML file overridden by command-line flags.
//!
//! ```toml
//! q = 41
//! primes = "3..30"
//! n_bound = 1000
//! parity = "both"
//! format = "json"
//! ```

use std::path::{Path, PathBuf};
use std::str::FromStr;

use qcurve_core::quadfield::check_q;
use qcurve_core::reference;
use qcurve_core::sieve::{ParityMode, TraceOptions};
use serde::Deserialize;

use crate::error::{Result, StoreError};
use crate::snapshot::SummaryPolicy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl FromStr for Format {
    type Err = StoreError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(StoreError::Config(format!("unknown format {s:?}"))),
        }
    }
}

pub fn parse_parity(s: &str) -> Result<ParityMode> {
    match s {
        "even" => Ok(ParityMode::Even),
        "odd" => Ok(ParityMode::Odd),
        "both" => Ok(ParityMode::Both),
        _ => Err(StoreError::Config(format!("unknown parity {s:?}"))),
    }
}

/// `"A..B"` (inclusive).
pub fn parse_range(s: &str) -> Result<(u64, u64)> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| StoreError::Config(format!("prime range {s:?} is not A..B")))?;
    let a: u64 = a
        .trim()
        .parse()
        .map_err(|_| StoreError::Config(format!("bad range start in {s:?}")))?;
    let b: u64 = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| StoreError::Config(format!("bad range end in {s:?}")))?;
    if a > b {
        return Err(StoreError::Config(format!("empty prime range {s:?}")));
    }
    Ok((a, b))
}

pub fn parse_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| StoreError::Config(format!("bad list entry {t:?}")))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub q: u32,
    pub primes: (u64, u64),
    pub n_bound: u64,
    pub parity: ParityMode,
    pub chi_restrict: Option<Vec<i64>>,
    pub include_additive: bool,
    pub snapshot: Option<PathBuf>,
    pub offline: bool,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub summary_policy: SummaryPolicy,
    /// Primes for the obstruction comparison run below this bound.
    pub obstruction_p_max: u64,
    /// Bounds for the sweep over `(x, k, n)`.
    pub sweep_x_max: u64,
    pub sweep_k_max: u32,
    pub sweep_n_max: u32,
    pub power_two_s_max: u32,
    pub power_two_n_max: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            q: 41,
            primes: reference::AUX_PRIME_RANGE,
            n_bound: reference::N_BOUND,
            parity: ParityMode::Both,
            chi_restrict: None,
            include_additive: false,
            snapshot: None,
            offline: false,
            out: None,
            format: Format::Json,
            summary_policy: SummaryPolicy::Warn,
            obstruction_p_max: 100,
            sweep_x_max: 1_000_000,
            sweep_k_max: 2,
            sweep_n_max: 11,
            power_two_s_max: 10,
            power_two_n_max: 40,
        }
    }
}

/// Keys accepted in a config file; all optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub q: Option<u32>,
    pub primes: Option<String>,
    pub n_bound: Option<u64>,
    pub parity: Option<String>,
    pub chi_restrict: Option<Vec<i64>>,
    pub include_additive: Option<bool>,
    pub snapshot: Option<PathBuf>,
    pub offline: Option<bool>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub strict_summary: Option<bool>,
    pub obstruction_p_max: Option<u64>,
    pub sweep_x_max: Option<u64>,
    pub sweep_k_max: Option<u32>,
    pub sweep_n_max: Option<u32>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| StoreError::io(path, e))?;
        toml::from_str(&text).map_err(|e| StoreError::Config(format!("{}: {e}", path.display())))
    }

    pub fn apply(&self, c: &mut RunConfig) -> Result<()> {
        if let Some(q) = self.q {
            c.q = q;
        }
        if let Some(p) = &self.primes {
            c.primes = parse_range(p)?;
        }
        if let Some(n) = self.n_bound {
            c.n_bound = n;
        }
        if let Some(p) = &self.parity {
            c.parity = parse_parity(p)?;
        }
        if let Some(l) = &self.chi_restrict {
            c.chi_restrict = Some(l.clone());
        }
        if let Some(b) = self.include_additive {
            c.include_additive = b;
        }
        if let Some(p) = &self.snapshot {
            c.snapshot = Some(p.clone());
        }
        if let Some(b) = self.offline {
            c.offline = b;
        }
        if let Some(p) = &self.out {
            c.out = Some(p.clone());
        }
        if let Some(f) = &self.format {
            c.format = f.parse()?;
        }
        if let Some(true) = self.strict_summary {
            c.summary_policy = SummaryPolicy::Strict;
        }
        if let Some(v) = self.obstruction_p_max {
            c.obstruction_p_max = v;
        }
        if let Some(v) = self.sweep_x_max {
            c.sweep_x_max = v;
        }
        if let Some(v) = self.sweep_k_max {
            c.sweep_k_max = v;
        }
        if let Some(v) = self.sweep_n_max {
            c.sweep_n_max = v;
        }
        Ok(())
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        check_q(self.q as u64)?;
        if self.primes.0 < 3 {
            return Err(StoreError::Config(
                "prime range must start at 3 or above".into(),
            ));
        }
        if self.n_bound < 3 {
            return Err(StoreError::Config("n bound must be at least 3".into()));
        }
        Ok(())
    }

    pub fn trace_options(&self) -> TraceOptions {
        TraceOptions {
            parity: self.parity,
            chi_restrict: self.chi_restrict.clone(),
            include_additive: self.include_additive,
            ..TraceOptions::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        assert_eq!(parse_range("3..30").unwrap(), (3, 30));
        assert_eq!(parse_range("3..=31").unwrap(), (3, 31));
        assert!(parse_range("30..3").is_err());
        assert_eq!(parse_list("6, 1").unwrap(), vec![6, 1]);
    }

    #[test]
    fn file_overrides_defaults() {
        let f: FileConfig = toml::from_str("q = 17\nprimes = \"3..13\"\nparity = \"odd\"").unwrap();
        let mut c = RunConfig::default();
        f.apply(&mut c).unwrap();
        assert_eq!((c.q, c.primes, c.parity), (17, (3, 13), ParityMode::Odd));
        assert!(toml::from_str::<FileConfig>("bogus = 1").is_err());
    }
}
