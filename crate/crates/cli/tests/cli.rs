//! End-to-end checks of the binary: exit codes, formats, and the golden table.

use std::path::Path;
use std::process::{Command, Output};

fn duadic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_duadic"))
        .args(args)
        .env_remove("DUADIC_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn split_exit_codes() {
    let found = duadic(&["split", "--n", "5", "--q", "3"]);
    assert_eq!(found.status.code(), Some(0));
    let text = stdout_of(&found);
    assert!(text.contains("C1"));
    assert!(text.contains("quadratic residue"));
    assert!(text.contains("self-dual: true"));

    let none = duadic(&["split", "--n", "7", "--q", "3"]);
    assert_eq!(none.status.code(), Some(1));

    let even = duadic(&["split", "--n", "6", "--q", "3"]);
    assert_eq!(even.status.code(), Some(2));

    let not_prime_power = duadic(&["split", "--n", "5", "--q", "6"]);
    assert_eq!(not_prime_power.status.code(), Some(2));
}

#[test]
fn split_json_report() {
    let out = duadic(&["split", "--n", "13", "--q", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["splittings"].as_array().unwrap().len(), 4);
    assert_eq!(v["self_dual_verified"], true);
    let qr: Vec<bool> = v["qr_flags"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b.as_bool().unwrap())
        .collect();
    assert_eq!(qr.iter().filter(|&&b| b).count(), 1);
}

#[test]
fn table1_matches_golden_file() {
    let golden = include_str!("golden/table1.txt");
    let out = duadic(&["table1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), golden);
    // a truncated run is a byte prefix of the full table
    let prefix = duadic(&["table1", "--n-max", "20"]);
    assert!(golden.starts_with(&stdout_of(&prefix)));
    // runs are byte-stable
    let again = duadic(&["table1"]);
    assert_eq!(stdout_of(&again), golden);
}

#[test]
fn table1_csv_projection() {
    let out = duadic(&["table1", "--q", "3", "--format", "csv"]);
    let text = stdout_of(&out);
    assert!(text.starts_with("n,q,entry_index,s1_coset_reps,qr\n"));
    assert!(text.contains("5,3,1,1,true\n"));
    assert!(text.contains("41,3,3,1 2 4 8 16,true\n"));
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(1) == Some("3")));
}

#[test]
fn classify_marks_table_rows() {
    let out = duadic(&["classify", "--q", "4", "--n-max", "45"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let split_rows: Vec<u64> = text
        .lines()
        .skip(1)
        .filter(|l| l.split(',').nth(1) == Some("true"))
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .filter(|&n| n >= 5)
        .collect();
    assert_eq!(split_rows, vec![7, 9, 11, 17, 19, 21, 23, 27, 31, 33, 43]);
}

#[test]
fn census_prime_order_density() {
    let out = duadic(&["census", "--kind", "prime-order", "--q", "2", "--x", "1000000"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let density = v["empirical_density"].as_f64().unwrap();
    assert!((density - 7.0 / 24.0).abs() < 0.01);
}

#[test]
fn census_report_and_output_file() {
    let dir = std::env::temp_dir().join("duadic-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let _ = std::fs::remove_file(&path);
    let out = duadic(&[
        "census", "--kind", "A", "--q", "3", "--x", "20000", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["kind"], "A-q3-all");
    assert!(v["count"].as_u64().unwrap() > 0);
    assert!(v["series"].as_array().unwrap().len() > 5);
    let _ = std::fs::remove_file(&path);

    // invalid input does not create the output file
    let bad = duadic(&[
        "census", "--kind", "A", "--q", "6", "--x", "1000", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(!Path::new(&path).exists());
}

#[test]
fn census_checkpoint_resume() {
    let dir = std::env::temp_dir().join("duadic-cli-ckpt");
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    let run = |x: &str| {
        Command::new(env!("CARGO_BIN_EXE_duadic"))
            .args(["census", "--kind", "G", "--a", "-4", "--x", x])
            .env("DUADIC_CACHE_DIR", &dir)
            .output()
            .expect("binary runs")
    };
    let first = run("30000");
    assert_eq!(first.status.code(), Some(0));
    // a checkpoint file was written and a longer run resumes from it
    assert!(std::fs::read_dir(&dir).unwrap().count() > 0);
    let second = run("60000");
    let v: serde_json::Value =
        serde_json::from_str(&String::from_utf8(second.stdout).unwrap()).unwrap();
    let fresh = duadic(&["census", "--kind", "G", "--a", "-4", "--x", "60000"]);
    let w: serde_json::Value = serde_json::from_str(&stdout_of(&fresh)).unwrap();
    assert_eq!(v["count"], w["count"]);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn constants_report() {
    let out = duadic(&[
        "constants", "--a", "-4", "--prime-bound", "100000", "--series-terms", "100000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let g = v["g"]["value"].as_f64().unwrap();
    assert!((g - 0.3271).abs() < 1e-3);
    assert!(v["g"]["error"].as_f64().unwrap() > 0.0);
    assert!(v["j"]["value"].as_f64().unwrap() > g);

    let square = duadic(&["constants", "--a", "9"]);
    assert_eq!(square.status.code(), Some(2));
}

#[test]
fn verify_runs_clean() {
    let out = duadic(&["verify", "--n-max", "15"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("all extensions Hermitian self-dual"));
}
