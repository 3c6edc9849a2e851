use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qcurve::config::{parse_list, parse_parity, parse_range, FileConfig, Format, RunConfig};
use qcurve::error::StoreError;
use qcurve::pipeline::{self, eliminate_text, verify_text};
use qcurve::report::write_atomic;
use qcurve::snapshot::SummaryPolicy;
use qcurve::source::{self, SourceOptions};
use qcurve::{checks, exit};

/// Newform elimination for x² − q^(2k+1) = yⁿ, q ∈ {17, 41, 89, 97}.
#[derive(Parser)]
#[command(name = "qcurve", version)]
struct Cli {
    /// TOML config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the sieve for one q and grade the result.
    Eliminate(Flags),
    /// Run the identity and invariant checks.
    Verify(Flags),
    /// Populate the cache with the newform space for q.
    Fetch(Flags),
}

#[derive(Args, Clone, Default)]
struct Flags {
    #[arg(long)]
    q: Option<u32>,
    /// Auxiliary rational primes, `A..B` inclusive.
    #[arg(long)]
    primes: Option<String>,
    #[arg(long)]
    n_bound: Option<u64>,
    /// Snapshot file with the newform space.
    #[arg(long)]
    snapshot: Option<PathBuf>,
    /// Never touch the network.
    #[arg(long)]
    offline: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// `json` or `text`.
    #[arg(long)]
    format: Option<String>,
    /// Comma-separated residues of x mod p to keep.
    #[arg(long)]
    chi_restrict: Option<String>,
    /// `even`, `odd` or `both`.
    #[arg(long)]
    parity: Option<String>,
    /// Give ±(N + 1) to additive-degenerate residue classes.
    #[arg(long)]
    include_additive: bool,
    /// Fail on a space-count mismatch instead of warning.
    #[arg(long, conflicts_with = "ignore_summary")]
    strict_summary: bool,
    /// Do not compare space counts at all.
    #[arg(long)]
    ignore_summary: bool,
    /// Upper bound on |x| for the solution sweep in `verify`.
    #[arg(long)]
    sweep_x_max: Option<u64>,
}

fn build_config(file: Option<&PathBuf>, f: &Flags) -> Result<RunConfig, StoreError> {
    let mut c = RunConfig::default();
    if let Some(path) = file {
        FileConfig::load(path)?.apply(&mut c)?;
    }
    if let Some(q) = f.q {
        c.q = q;
    }
    if let Some(p) = &f.primes {
        c.primes = parse_range(p)?;
    }
    if let Some(n) = f.n_bound {
        c.n_bound = n;
    }
    if let Some(p) = &f.snapshot {
        c.snapshot = Some(p.clone());
    }
    c.offline |= f.offline;
    if let Some(p) = &f.out {
        c.out = Some(p.clone());
    }
    if let Some(s) = &f.format {
        c.format = s.parse()?;
    }
    if let Some(s) = &f.chi_restrict {
        c.chi_restrict = Some(parse_list(s)?);
    }
    if let Some(s) = &f.parity {
        c.parity = parse_parity(s)?;
    }
    c.include_additive |= f.include_additive;
    if f.strict_summary {
        c.summary_policy = SummaryPolicy::Strict;
    }
    if f.ignore_summary {
        c.summary_policy = SummaryPolicy::Ignore;
    }
    if let Some(x) = f.sweep_x_max {
        c.sweep_x_max = x;
    }
    c.validate()?;
    Ok(c)
}

fn emit(cfg: &RunConfig, json: String, text: String) -> Result<(), StoreError> {
    let body = match cfg.format {
        Format::Json => json,
        Format::Text => text,
    };
    match &cfg.out {
        Some(path) => write_atomic(path, body.as_bytes()),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn data_error(e: &StoreError) -> bool {
    matches!(
        e,
        StoreError::CoverageUnavailable(_) | StoreError::NotCached(_) | StoreError::Network(_)
    )
}

fn run(cli: Cli) -> Result<i32, StoreError> {
    let (flags, cmd) = match &cli.command {
        Command::Eliminate(f) => (f, "eliminate"),
        Command::Verify(f) => (f, "verify"),
        Command::Fetch(f) => (f, "fetch"),
    };
    let cfg = build_config(cli.config.as_ref(), flags)?;
    let src = SourceOptions::new(cfg.snapshot.clone(), cfg.offline);
    match cmd {
        "eliminate" => {
            let r = pipeline::eliminate(&cfg, &src)?;
            emit(&cfg, to_json(&r), eliminate_text(&r))?;
            eprintln!("{}", r.conclusion);
            Ok(if r.outcome_ok {
                exit::OK
            } else {
                exit::OUTCOME_MISMATCH
            })
        }
        "verify" => {
            let r = pipeline::verify(&cfg, &src);
            emit(&cfg, to_json(&r), verify_text(&r))?;
            let failed = r.checks.iter().filter(|c| !c.ok).count();
            eprintln!("{} checks, {failed} failed", r.checks.len());
            Ok(if r.all_ok {
                exit::OK
            } else {
                exit::CHECK_FAILED
            })
        }
        _ => {
            let (s, origin) = source::fetch(cfg.q as u64, &src)?;
            let check = qcurve::snapshot::enforce_summary(&s, cfg.summary_policy)?;
            let ram = checks::ramanujan_violations(&s);
            println!(
                "q = {}: {} classes, dim {}, from {} into {}",
                s.q,
                s.classes.len(),
                s.total_dim,
                origin.name(),
                src.cache.dir().display()
            );
            if let Some(c) = check {
                println!("space counts: {}", c.describe());
            }
            if !ram.is_empty() {
                println!("embeddings above 2√p: {ram:?}");
                return Ok(exit::CHECK_FAILED);
            }
            Ok(exit::OK)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            if data_error(&e) {
                exit::DATA_UNAVAILABLE
            } else {
                exit::ERROR
            }
        }
    };
    ExitCode::from(code as u8)
}
