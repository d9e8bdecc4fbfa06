use std::process::{Command, Output};

use serde_json::Value;

fn hgs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgs"))
        .args(args)
        .env_remove("HGS_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = hgs(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn count_1806() {
    let v = json(&["count", "1806"]);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "count");
    assert_eq!(v["results"]["type_count"], 30);
    assert_eq!(v["results"]["total_by_formula"], 259);
    assert_eq!(v["results"]["total_by_sum"], 259);
}

#[test]
fn groups_of_non_squarefree_order_is_invalid() {
    let out = hgs(&["groups", "12"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("squarefree"));
    assert_eq!(hgs(&["count", "0"]).status.code(), Some(2));
}

#[test]
fn groups_listing() {
    let v = json(&["groups", "30"]);
    assert_eq!(v["results"]["type_count"], 4);
    let out = hgs(&["--ascii", "groups", "6"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("tau sigma tau^-1 = sigma^2"), "{text}");
    let csv = String::from_utf8(hgs(&["--format", "csv", "groups", "6"]).stdout).unwrap();
    assert_eq!(csv.lines().next(), Some("n,d,e,k,z,g,presentation"));
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn three_prime_table() {
    let v = json(&["table", "three-prime", "2", "3", "7"]);
    assert_eq!(v["results"]["rows"].as_array().unwrap().len(), 6);
    assert_eq!(v["results"]["total"], 17);
    assert_eq!(v["results"]["type_count"], 6);
}

#[test]
fn four_prime_table() {
    let v = json(&["table", "four-prime", "2", "3", "7", "43"]);
    assert_eq!(v["results"]["rows"].as_array().unwrap().len(), 19);
    assert_eq!(v["results"]["total"], 259);
    let bad = hgs(&["table", "four-prime", "2", "3", "7", "41"]);
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(hgs(&["table", "three-prime", "2", "3", "9"]).status.code(), Some(2));
}

#[test]
fn verify_range() {
    let out = hgs(&["verify", "1..60"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&["verify", "1..60", "110"]);
    assert_eq!(v["results"]["passed"], true);
    assert_eq!(v["results"]["checked"], 38);
}

#[test]
fn verify_strict_and_budget() {
    assert_eq!(hgs(&["verify", "30", "--skip-perm-over", "10"]).status.code(), Some(0));
    assert_eq!(hgs(&["verify", "30", "--skip-perm-over", "10", "--strict"]).status.code(), Some(1));
    let env = Command::new(env!("CARGO_BIN_EXE_hgs"))
        .args(["verify", "30", "--strict"])
        .env("HGS_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(1));
    assert_eq!(hgs(&["verify", "12"]).status.code(), Some(2));
    assert_eq!(hgs(&["verify", "x..3"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--format", "json", "count", "2310", "--terms", "--per-type"][..],
        &["--format", "csv", "verify", "1..100"],
        &["groups", "1806"],
    ] {
        assert_eq!(hgs(args).stdout, hgs(args).stdout, "{args:?}");
    }
}
