use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strata-lab")).args(args).env_remove("STRATA_LAB_CACHE").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["quad-counts", "--p", "3"]).status.code(), Some(0));
    assert_eq!(run(&["quad-counts", "--p", "2"]).status.code(), Some(4));
    assert_eq!(run(&["quad-counts", "--p", "9"]).status.code(), Some(4));
    assert_eq!(run(&["vrt", "--radius", "3"]).status.code(), Some(4));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(4));
    assert_eq!(run(&["ggp", "report", "--p", "3", "--poly", "1,x"]).status.code(), Some(4));
    assert_eq!(run(&["ggp", "report", "--p", "3", "--poly", "1,1,0,1"]).status.code(), Some(4));
    assert_eq!(run(&["ggp", "report", "--p", "3", "--poly", "2,1,1"]).status.code(), Some(4));
    assert_eq!(run(&["strata", "fermat", "--p", "7", "--k", "3"]).status.code(), Some(3));
    assert_eq!(run(&["vrt", "--p", "3", "--budget-subspaces", "20"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn reports() {
    let out = run(&["ggp", "report", "--p", "3", "--poly", "1,0,3,0,3,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    assert_eq!(r["multiplicity"], 4);
    assert_eq!(r["fixed"], 2);
    assert_eq!(r["P"], serde_json::json!([1, 0, 0, 0, 0, 0, 1]));
    assert_eq!(r["Qg"], serde_json::json!([1, 0, 1]));
    assert_eq!(r["oracles"]["dl"], 2);

    let out = run(&["strata", "fermat", "--p", "3", "--k", "2"]);
    assert_eq!(json(&out)["result"]["count"], 280);
    let out = run(&["strata", "s", "--m", "1", "--p", "3", "--k", "2"]);
    assert_eq!(json(&out)["result"]["total"], 10);
    let out = run(&["strata", "hypersurface", "--expr", "x0^2 + x1^2 + x2^2", "--nvars", "3", "--p", "5"]);
    assert_eq!(json(&out)["result"]["count"], 6);

    for p in ["3", "5"] {
        let out = run(&["quad-counts", "--p", p]);
        let rows = json(&out)["result"]["rows"].as_array().unwrap().clone();
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r["agree"] == true));
    }

    let out = run(&["vrt", "--p", "3", "--radius", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    assert_eq!(r["verdict"], "isomorphic");
    assert_eq!(r["building"]["vertices"], 81);
    assert_eq!(r["mapping"].as_array().unwrap().len(), 81);
}

#[test]
fn table_output() {
    let out = run(&["quad-counts", "--p", "5", "--table"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("ok: true"));
    assert!(s.lines().any(|l| l.contains("maximal isotropics in H^2+<1>") && l.contains("156")));
}

#[test]
fn deterministic_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["ggp", "catalog", "--p", "3", "--degrees", "2,4"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let mut cached = args.to_vec();
    cached.extend(["--cache-dir", d]);
    let cold = run(&cached);
    let files: Vec<_> = std::fs::read_dir(dir.path().join("ggp-catalog")).unwrap().collect();
    assert_eq!(files.len(), 1);
    let warm = run(&cached);
    assert_eq!(cold.stdout, a.stdout);
    assert_eq!(warm.stdout, a.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_strata-lab"))
        .args(args)
        .env("STRATA_LAB_CACHE", d)
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
}
