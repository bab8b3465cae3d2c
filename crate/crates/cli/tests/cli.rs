//! Command-level behaviour of the `cellq` binary: exit codes, artifact
//! round trips and cache keying.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn cellq(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellq"))
        .args(args)
        .current_dir(dir)
        .env("CELLQ_CACHE", dir.join("cache"))
        .output()
        .expect("cellq runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).expect("valid json")
}

fn read_json(path: &Path) -> Value {
    json(&fs::read(path).expect("artifact exists"))
}

fn build_a1(dir: &Path, orbits: &str) {
    let out = cellq(dir, &["build", "--type", "A", "--rank", "1", "--orbits", orbits, "--out", "alg.json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn help_and_version_succeed() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&cellq(dir.path(), &["--help"])), 0);
    let v = cellq(dir.path(), &["--version"]);
    assert_eq!(code(&v), 0);
    assert!(String::from_utf8_lossy(&v.stdout).contains("0.1.0"));
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let cases: &[&[&str]] = &[
        &["build", "--type", "A", "--rank", "2", "--orbits", "3;-"],
        &["build", "--type", "A", "--rank", "2", "--orbits", "1;;x"],
        &["build", "--type", "Z", "--rank", "2", "--orbits", "-"],
        &["build", "--type", "G", "--rank", "3", "--orbits", "-"],
        &["build", "--type", "A", "--rank", "2"],
        &["frobnicate"],
        &["--jobs", "0", "report"],
        &["report", "A1:-", "--props", "no_such_check"],
        &["verify", "missing.json"],
    ];
    for args in cases {
        let out = cellq(d, args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty(), "{args:?} should explain itself");
    }
}

#[test]
fn artifacts_of_the_wrong_kind_are_rejected() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    build_a1(d, "-");
    fs::write(d.join("garbage.json"), b"{ not json").unwrap();
    assert_eq!(code(&cellq(d, &["reps", "garbage.json"])), 2);
    assert_eq!(code(&cellq(d, &["reps", "alg.json", "--out", "reps.json"])), 0);
    assert_eq!(code(&cellq(d, &["special", "reps.json"])), 2);
    assert_eq!(code(&cellq(d, &["cellbasis", "alg.json", "--ring", "bogus"])), 2);
    assert_eq!(code(&cellq(d, &["specialize", "alg.json", "--field", "Q", "--q", "1"])), 2);
}

#[test]
fn build_writes_a_summarized_algebra() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    build_a1(d, "1;-");
    let alg = read_json(&d.join("alg.json"));
    assert_eq!(alg["schema"], "cellq.alg/1");
    assert_eq!(alg["instance"]["type"], "A");
    assert_eq!(alg["summary"]["group_order"], 2);
    assert_eq!(alg["summary"]["size"], 5);
    assert_eq!(alg["summary"]["distinguished"].as_array().unwrap().len(), 3);

    // stdout carries the same bytes as the file
    let out = cellq(d, &["build", "--type", "A", "--rank", "1", "--orbits", "1;-"]);
    assert_eq!(out.stdout, fs::read(d.join("alg.json")).unwrap());
}

#[test]
fn stage_commands_chain_through_files() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    build_a1(d, "1;-");
    for args in [
        &["reps", "alg.json", "--out", "reps.json"][..],
        &["special", "alg.json", "--out", "special.json"],
        &["cellbasis", "alg.json", "--reps", "reps.json", "--out", "datum.json"],
        &["specialize", "datum.json", "--field", "cyclotomic:4", "--q", "zeta", "--out", "specht.json"],
    ] {
        let out = cellq(d, args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(read_json(&d.join("reps.json"))["schema"], "cellq.reps/1");
    assert_eq!(read_json(&d.join("special.json"))["schema"], "cellq.special/1");
    assert_eq!(read_json(&d.join("datum.json"))["schema"], "cellq.datum/1");
    let specht = read_json(&d.join("specht.json"));
    assert_eq!(specht["schema"], "cellq.specht/1");
    assert!(specht["specialization"].as_str().unwrap().contains("zeta_4"));

    let verify = cellq(d, &["verify", "alg.json", "reps.json", "--format", "text"]);
    assert_eq!(code(&verify), 0, "{}", String::from_utf8_lossy(&verify.stdout));
    assert!(!verify.stdout.is_empty());
}

#[test]
fn verify_reports_every_check_as_json() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    build_a1(d, "1;-");
    let out = cellq(d, &["--jobs", "2", "verify", "alg.json", "--out", "verify.json"]);
    assert_eq!(code(&out), 0);
    let report = read_json(&d.join("verify.json"));
    assert_eq!(report["mode"], "exhaustive");
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() >= 15);
    assert!(checks.iter().all(|c| c["status"] != "fail"));
    assert!(checks.iter().all(|c| c.get("elapsed_ms").is_none()), "timing stays out of reports");

    let only = cellq(d, &["verify", "alg.json", "--props", "schur_relations"]);
    assert_eq!(code(&only), 0);
    let checks = json(&only.stdout)["checks"].as_array().unwrap().clone();
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["name"], "schur_relations");
}

#[test]
fn tampered_representations_fail_verification_with_a_witness() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    build_a1(d, "1;-");
    assert_eq!(code(&cellq(d, &["reps", "alg.json", "--out", "reps.json"])), 0);
    // prime the cache with the honest verdict
    assert_eq!(code(&cellq(d, &["verify", "alg.json", "reps.json"])), 0);

    let mut reps = read_json(&d.join("reps.json"));
    reps["reps"]["irreps"][0]["rho"]["0"][0][0] = Value::from(2);
    fs::write(d.join("bad.json"), serde_json::to_vec_pretty(&reps).unwrap()).unwrap();

    let out = cellq(d, &["verify", "alg.json", "bad.json", "--props", "irreps_are_representations"]);
    assert_eq!(code(&out), 1, "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out.stdout);
    let check = &report["checks"][0];
    assert_eq!(check["status"], "fail");
    assert!(check["failures"].as_u64().unwrap() > 0);
    assert!(!check["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn report_over_no_instances_is_empty_and_passes() {
    let dir = TempDir::new().unwrap();
    let out = cellq(dir.path(), &["report"]);
    assert_eq!(code(&out), 0);
    let report = json(&out.stdout);
    assert_eq!(report["passed"], true);
    assert!(report["reports"].as_array().unwrap().is_empty());
}

#[test]
fn report_covers_each_instance() {
    let dir = TempDir::new().unwrap();
    let out = cellq(dir.path(), &["report", "A1:1;-", "B2:1;2;-", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out.stdout);
    assert_eq!(report["schema"], "cellq.report/1");
    assert_eq!(report["reports"].as_array().unwrap().len(), 2);
}

#[test]
fn hecke_dump_writes_the_group_tables() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let out = cellq(d, &["hecke", "--type", "A", "--rank", "2", "--dump", "hecke.json"]);
    assert_eq!(code(&out), 0);
    let h = read_json(&d.join("hecke.json"));
    assert_eq!(h["schema"], "cellq.hecke/1");
    assert_eq!(h["order"], 6);
    assert_eq!(h["words"].as_array().unwrap().len(), 6);
    assert_eq!(h["h"].as_array().unwrap().len(), 6);
}

#[test]
fn pipeline_config_round_trips_and_reuses_the_cache() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let run = |args: &[&str]| {
        let out = cellq(d, args);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        String::from_utf8_lossy(&out.stderr).into_owned()
    };
    let first = run(&["pipeline", "--type", "A", "--rank", "1", "--orbits", "1;-", "--out-dir", "one"]);
    assert!(first.contains("hits=0 "), "{first}");
    for f in ["config.json", "alg.json", "reps.json", "special.json", "datum.json", "verify.json", "summary.txt"] {
        assert!(d.join("one").join(f).exists(), "missing {f}");
    }
    let second = run(&["pipeline", "--config", "one/config.json", "--out-dir", "two"]);
    assert!(second.contains(" misses=0"), "{second}");
    assert_eq!(fs::read(d.join("one/verify.json")).unwrap(), fs::read(d.join("two/verify.json")).unwrap());

    // stage commands over pipeline outputs hit the same cache entries
    let out = Command::new(env!("CARGO_BIN_EXE_cellq"))
        .args(["-v", "reps", "one/alg.json"])
        .current_dir(d)
        .env("CELLQ_CACHE", d.join("cache"))
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stderr).contains("reps: cache hit"));
    assert_eq!(out.stdout, fs::read(d.join("one/reps.json")).unwrap());
}

#[test]
fn no_cache_leaves_the_cache_directory_untouched() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let out = cellq(d, &["--no-cache", "build", "--type", "A", "--rank", "1", "--orbits", "-"]);
    assert_eq!(code(&out), 0);
    assert!(!d.join("cache").exists());
    let out = cellq(d, &["--cache-dir", "elsewhere", "build", "--type", "A", "--rank", "1", "--orbits", "-"]);
    assert_eq!(code(&out), 0);
    assert!(d.join("elsewhere").is_dir());
    assert!(!d.join("cache").exists());
}

#[test]
fn corrupt_cache_entries_are_invariant_breaches() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let args = ["pipeline", "--type", "A", "--rank", "1", "--orbits", "-", "--out-dir", "out"];
    assert_eq!(code(&cellq(d, &args)), 0);
    let mut entries = 0;
    for shard in fs::read_dir(d.join("cache")).unwrap() {
        for entry in fs::read_dir(shard.unwrap().path()).unwrap() {
            fs::write(entry.unwrap().path(), b"{ truncated").unwrap();
            entries += 1;
        }
    }
    assert!(entries > 0);
    let out = cellq(d, &args);
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
    let fresh: Vec<&str> = ["--no-cache"].iter().chain(&args[..7]).chain(&["--out-dir", "fresh"]).copied().collect();
    assert_eq!(code(&cellq(d, &fresh)), 0, "recomputing bypasses the damaged cache");
}
