use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn dilate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dilate"))
        .args(args)
        .env_remove("DILATE_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(format!("{}-{name}", std::process::id()))
}

#[test]
fn simplex_json() {
    let out = dilate(&["--format", "json", "simplex", "-k", "2", "-m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "simplex");
    assert_eq!(v["delta"], serde_json::json!([1, 0, 2, 0]));
    assert_eq!(v["normalized_volume"], "3");
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn points_counts_match_ehrhart() {
    // P(1, 2): δ = 1 + t², so |2P ∩ ℤ³| = C(5,3) + C(3,3) = 11.
    let out = dilate(&["--format", "json", "points", "-k", "2", "-m", "2", "-n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["points"].as_array().unwrap().len(), 11);
}

#[test]
fn gb_certifies_small_instance() {
    let out = dilate(&["gb", "-k", "2", "-m", "3", "--maxdeg", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("RUT certified"));
}

#[test]
fn certificate_round_trip_and_tamper() {
    let out = dilate(&["--format", "json", "obstruct", "-k", "2", "-m", "5", "-a", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let path = scratch("cert.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let ok = dilate(&["verify-certificate", path.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stdout));

    let mut v = json(&out);
    let tail = &mut v["certificate"]["binomials"][0]["binomial"]["tail"];
    let (name, _) = tail.as_object().unwrap().iter().find(|(n, _)| n.starts_with('y')).unwrap();
    let name = name.clone();
    tail[name.as_str()] = Value::from(1);
    std::fs::write(&path, serde_json::to_vec(&v).unwrap()).unwrap();
    let bad = dilate(&["verify-certificate", path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    std::fs::remove_file(&path).ok();
}

#[test]
fn obstruct_rejects_unit_parameters() {
    let out = dilate(&["obstruct", "-k", "2", "-m", "5", "-a", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_and_resource_errors_exit_2() {
    assert_eq!(dilate(&["simplex", "-k", "2", "-m", "4", "-a", "2"]).status.code(), Some(2));
    assert_eq!(dilate(&["gb", "-k", "4", "-m", "2"]).status.code(), Some(2));
    assert_eq!(dilate(&["simplex", "-k", "2"]).status.code(), Some(2));
    let capped = Command::new(env!("CARGO_BIN_EXE_dilate"))
        .args(["gb", "-k", "2", "-m", "2"])
        .env("DILATE_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn normalization_warns_on_stderr() {
    let out = dilate(&["--format", "json", "simplex", "-k", "2", "-m", "5", "-a", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["params"]["a"], serde_json::json!([2]));
    assert!(!out.stderr.is_empty());
}

#[test]
fn json_is_deterministic_across_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_dilate"))
            .args(["--format", "json", "triangulate", "-k", "2", "-m", "3"])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, run("4").stdout);
    assert_eq!(one.stdout, run("4").stdout);
}

#[test]
fn output_flag_writes_file() {
    let path = scratch("simplex.txt");
    let out = dilate(&["-o", path.to_str().unwrap(), "simplex", "-k", "2", "-m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(!std::fs::read_to_string(&path).unwrap().is_empty());
    std::fs::remove_file(&path).ok();
}
