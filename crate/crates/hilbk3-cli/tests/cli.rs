//! End-to-end runs of the `hilbk3` binary: output, exit codes, configuration and caching.

use std::path::Path;
use std::process::{Command, Output};

fn hilbk3(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilbk3"))
        .args(args)
        .current_dir(dir)
        .env_remove("HILBK3_CONFIG")
        .env_remove("HILBK3_QMAX")
        .env_remove("HILBK3_FORMAT")
        .env_remove("HILBK3_CACHE_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("hilbk3-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn expand_delta() {
    let d = scratch("expand");
    let o = hilbk3(&["--qmax", "3", "expand", "Delta"], &d);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("q^1: 1\nq^2: -24\nq^3: 252"), "{text}");
}

#[test]
fn usage_errors_exit_2() {
    let d = scratch("usage");
    assert_eq!(hilbk3(&["expand", "Nope"], &d).status.code(), Some(2));
    assert_eq!(hilbk3(&["--qmax", "-1", "expand", "Delta"], &d).status.code(), Some(2));
    assert_eq!(hilbk3(&["verify", "nothing"], &d).status.code(), Some(2));
    assert_eq!(hilbk3(&["bracket", "p(-2,w) 1", "p(-1,F) 1"], &d).status.code(), Some(2));
    let o = hilbk3(&["bracket", "p(-2,w", "p(-1,F) 1"], &d);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains('^'));
}

#[test]
fn config_file_and_flag_precedence() {
    let d = scratch("config");
    std::fs::write(d.join("hilbk3.toml"), "q_max = 2\noutput = \"json\"\n").unwrap();
    let o = hilbk3(&["expand", "Delta"], &d);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["series"]["q_max"], 2, "{v}");
    let o = hilbk3(&["--format", "csv", "expand", "Delta"], &d);
    assert!(stdout(&o).starts_with("q,s,re,im"));
    let o = Command::new(env!("CARGO_BIN_EXE_hilbk3"))
        .args(["expand", "Delta"])
        .current_dir(&d)
        .env("HILBK3_FORMAT", "pretty")
        .output()
        .unwrap();
    assert!(stdout(&o).starts_with("q^1: 1"));
}

#[test]
fn cache_round_trip() {
    let d = scratch("cache");
    let cache = d.join("cache");
    let args = ["--qmax", "2", "--cache-dir", cache.to_str().unwrap(), "bracket", "p(-1,F) 1", "p(-1,F) 1"];
    let first = hilbk3(&args, &d);
    assert!(first.status.success());
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);
    let second = hilbk3(&args, &d);
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn verify_quick_suites() {
    let d = scratch("verify");
    let o = hilbk3(&["verify", "yz", "theta", "genus1"], &d);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("criterion  1 [PASS] yz"), "{text}");
    assert!(text.contains("criterion  9 [SKIP] genus1"), "{text}");
}
