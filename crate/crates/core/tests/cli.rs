//! Drives the `randlink` binary end to end.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn randlink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_randlink"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn without_timestamp(mut v: Value) -> Value {
    if let Some(m) = v.get_mut("manifest").and_then(Value::as_object_mut) {
        m.remove("timestamp");
    }
    v
}

#[test]
fn exact_commands() {
    let out = randlink(&["exact", "--n", "4", "--what", "stirling"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["result"]["values"], serde_json::json!(["6", "11", "6", "1"]));
    assert_eq!(
        json(&randlink(&["exact", "--n", "4", "--what", "expected"]))["result"],
        "25/12"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(randlink(&["exact", "--n", "4", "--what", "nope"]).status.code(), Some(2));
    assert_eq!(randlink(&["simulate", "--n", "4"]).status.code(), Some(2));
    let capped = Command::new(env!("CARGO_BIN_EXE_randlink"))
        .args(["exact", "--n", "50", "--what", "mode"])
        .env("RANDLINK_MAX_EXACT_N", "40")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
    let raised = Command::new(env!("CARGO_BIN_EXE_randlink"))
        .args(["verify", "--target", "partition", "--n", "130"])
        .env("RANDLINK_MAX_PARTITION_N", "200")
        .output()
        .unwrap();
    assert_eq!(raised.status.code(), Some(0));
    let bad_env = Command::new(env!("CARGO_BIN_EXE_randlink"))
        .args(["exact", "--n", "5", "--what", "mode"])
        .env("RANDLINK_MAX_WALKS", "lots")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
    let out = randlink(&[
        "converge", "--n", "4", "--steps", "0", "--walks", "10", "--seed", "1", "--out",
        "/nonexistent-dir/c.csv",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_commands_report_verdicts() {
    let out = randlink(&["verify", "--target", "partition", "--from", "3", "--to", "40"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["verdicts"].as_array().unwrap().len(), 38);

    let out = randlink(&["verify", "--target", "lemma"]);
    assert_eq!(out.status.code(), Some(0));

    // K_200 = 5 lies in [4, 5]; the strict form 4 < K < 5 has no solution.
    let out = randlink(&["verify", "--target", "erdos", "--n", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["K"], 5);
    assert_eq!(v["result"]["strict_pass"], false);

    // K_1000 = 7 exceeds ⌊log 1000⌋ = 6: reported as a failure.
    let out = randlink(&["verify", "--target", "erdos", "--n", "1000"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["coefficient_index"]["pass"], true);
}

#[test]
fn simulate_writes_distribution_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sim.json");
    let dump = dir.path().join("walks.jsonl");
    let out = randlink(&[
        "simulate", "--n", "5", "--k", "30", "--walks", "50", "--seed", "9", "--out",
        path.to_str().unwrap(), "--dump-trajectories", dump.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let file: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(file["schema"], 1);
    assert_eq!(file["manifest"]["parameters"]["walks"], 50);
    assert_eq!(file["distribution"]["walks"], 50);
    assert!(file["manifest"]["generator"].as_str().unwrap().contains("xoshiro256++"));

    let lines: Vec<String> = std::fs::read_to_string(&dump)
        .unwrap()
        .lines()
        .map(str::to_owned)
        .collect();
    assert_eq!(lines.len(), 50);
    let word: Value = serde_json::from_str(&lines[0]).unwrap();
    assert_eq!(word["n"], 5);
    assert_eq!(word["word"].as_array().unwrap().len(), 30);

    // A dumped trajectory fed back through `closure` is accepted.
    let one = dir.path().join("one.json");
    std::fs::write(&one, &lines[0]).unwrap();
    let out = randlink(&["closure", "--input", one.to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn converge_writes_csv_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let out = randlink(&[
        "converge", "--n", "4", "--steps", "0,1,500", "--walks", "100000", "--seed", "3", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,tv_components,tv_uniform,mean_components"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][3], 4.0);
    assert!(rows[2][1] < rows[1][1]);
    assert!(Path::new(&format!("{}.manifest.json", path.display())).exists());
}

#[test]
fn reruns_are_identical_apart_from_timestamp() {
    let args = ["simulate", "--n", "4", "--k", "50", "--walks", "20000", "--seed", "11"];
    let a = without_timestamp(json(&randlink(&args)));
    let b = without_timestamp(json(&randlink(&args)));
    assert_eq!(a, b);
}
