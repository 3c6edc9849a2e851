use std::process::{Command, Output};

use qcurve::exit;

fn qcurve(args: &[&str], cache: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcurve"))
        .args(args)
        .env("QCURVE_CACHE_DIR", cache)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn eliminate_reproduces_bundled_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    for q in ["17", "41"] {
        let o = qcurve(&["eliminate", "--q", q, "--offline"], dir.path());
        assert_eq!(code(&o), exit::OK, "{}", String::from_utf8_lossy(&o.stderr));
        let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(r["outcome_ok"], true);
    }
}

#[test]
fn uncovered_levels_need_a_snapshot() {
    let dir = tempfile::tempdir().unwrap();
    for q in ["89", "97"] {
        let o = qcurve(&["eliminate", "--q", q], dir.path());
        assert_eq!(code(&o), exit::DATA_UNAVAILABLE);
        assert!(String::from_utf8_lossy(&o.stderr).contains("coverage unavailable, provide snapshot"));
    }
}

#[test]
fn bad_arguments_are_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&qcurve(&["eliminate", "--q", "23"], dir.path())), exit::ERROR);
    assert_eq!(code(&qcurve(&["eliminate", "--q", "41", "--primes", "30..3"], dir.path())), exit::ERROR);
    let missing = dir.path().join("none.json");
    let o = qcurve(&["eliminate", "--q", "41", "--snapshot", missing.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), exit::ERROR);
}

#[test]
fn strict_summary_rejects_printed_row() {
    let dir = tempfile::tempdir().unwrap();
    let o = qcurve(&["eliminate", "--q", "41", "--offline", "--strict-summary"], dir.path());
    assert_eq!(code(&o), exit::ERROR);
}

#[test]
fn fetch_fills_cache_and_out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = qcurve(&["fetch", "--q", "17", "--offline"], dir.path());
    assert_eq!(code(&o), exit::OK, "{}", String::from_utf8_lossy(&o.stderr));
    let o = qcurve(&["fetch", "--q", "17", "--offline"], dir.path());
    assert!(String::from_utf8_lossy(&o.stdout).contains("from cache"));
    let out = dir.path().join("r.txt");
    let o = qcurve(
        &["eliminate", "--q", "17", "--offline", "--format", "text", "--out", out.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(code(&o), exit::OK);
    assert!(std::fs::read_to_string(out).unwrap().starts_with("q = 17"));
}

#[test]
fn config_file_is_read() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "q = 17\noffline = true\nformat = \"text\"\n").unwrap();
    let o = qcurve(&["--config", cfg.to_str().unwrap(), "eliminate"], dir.path());
    assert_eq!(code(&o), exit::OK);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("q = 17"));
    std::fs::write(&cfg, "q = 17\nunknown = 1\n").unwrap();
    assert_eq!(code(&qcurve(&["--config", cfg.to_str().unwrap(), "eliminate"], dir.path())), exit::ERROR);
}

#[test]
fn verify_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = qcurve(&["verify", "--offline", "--sweep-x-max", "100000"], dir.path());
    assert_eq!(code(&o), exit::OK, "{}", String::from_utf8_lossy(&o.stdout));
}
