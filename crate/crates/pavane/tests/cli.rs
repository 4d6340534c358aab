//! Integration tests driving the compiled binary.

use std::process::{Command, Output};

fn pavane(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pavane"))
        .args(args)
        .env_remove("PAVANE_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn count_a3_first_terms() {
    let out = pavane(&["count", "--class", "A:3", "--max-n", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1,1,2,4,8,16");
}

#[test]
fn biject_h_example() {
    let out = pavane(&[
        "biject", "--map", "h", "--param", "5", "--perm", "2,1,7,4,5,3,6",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1,2,7,4,5,3,6");
}

#[test]
fn biject_round_trip() {
    let out = pavane(&[
        "biject", "--map", "h-inv", "--param", "5", "--perm", "1,2,7,4,5,3,6",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "2,1,7,4,5,3,6");
}

#[test]
fn check_reports_containment() {
    let out = pavane(&["check", "--perm", "3752416", "--class", "set:2413"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "contains");
}

#[test]
fn verify_failure_exits_one() {
    let out = pavane(&[
        "verify", "wilf", "--left", "mono:3", "--right", "A:4", "--max-n", "5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn verify_success_exits_zero() {
    let out = pavane(&[
        "verify", "wilf", "--left", "A:4", "--right", "B:4", "--max-n", "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS"));
}

#[test]
fn invalid_arguments_exit_two() {
    let out = pavane(&["count", "--class", "nonsense:9", "--max-n", "4"]);
    assert_eq!(out.status.code(), Some(2));

    let out = pavane(&["count", "--max-n", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ceiling_exceeded_exits_three_unless_forced() {
    let out = pavane(&["count", "--class", "set:2413", "--max-n", "13"]);
    assert_eq!(out.status.code(), Some(3));

    // The A-family gets the higher ceiling.
    let out = pavane(&["count", "--class", "A:4", "--max-n", "13"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_output_is_well_formed() {
    let out = pavane(&["--format", "json", "count", "--class", "A:4", "--max-n", "6"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["class"], "A:4");
    assert_eq!(v["counts"][6], "311");
}

#[test]
fn csv_output_is_parseable() {
    let out = pavane(&["--format", "csv", "count", "--class", "A:3", "--max-n", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(&rows[3][1], "4");
}

#[test]
fn series_command_emits_coefficients() {
    let out = pavane(&["series", "a44", "--order", "6"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1,1,2,6,21,79,311");
}

#[test]
fn guess_finds_catalan_annihilator() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalan.txt");
    std::fs::write(&path, "1 1 2 5 14 42 132 429 1430 4862\n").unwrap();
    let out = pavane(&[
        "--format", "json",
        "guess", "--terms", path.to_str().unwrap(),
        "--deg-f", "2", "--deg-z", "1", "--margin", "2",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["found"], true);
    assert_eq!(v["polys"][2][1], "1");
}

#[test]
fn guess_reports_none_found() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("factorials.txt");
    std::fs::write(&path, "1 1 2 6 24 120 720 5040 40320 362880 3628800 39916800\n").unwrap();
    let out = pavane(&[
        "guess", "--terms", path.to_str().unwrap(),
        "--deg-f", "2", "--deg-z", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("no annihilator"));
}

#[test]
fn cache_warm_and_cold_counts_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let no_cache = pavane(&["count", "--class", "B:4", "--max-n", "7"]);
    let cold = pavane(&["--cache", cache, "count", "--class", "B:4", "--max-n", "7"]);
    let warm = pavane(&["--cache", cache, "count", "--class", "B:4", "--max-n", "7"]);
    assert!(no_cache.status.success() && cold.status.success() && warm.status.success());
    assert_eq!(stdout(&no_cache), stdout(&cold));
    assert_eq!(stdout(&cold), stdout(&warm));
    assert!(dir.path().join("B_4.jsonl").exists());
}

#[test]
fn list_streams_avoiders() {
    let out = pavane(&["list", "--class", "mono:3", "--n", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines.contains(&"3,2,1"));
    assert!(!lines.contains(&"1,2,3"));
}

#[test]
fn report_rlmax_runs() {
    let out = pavane(&[
        "--format", "json",
        "report", "rlmax", "--left", "mono:3", "--right", "set:213", "--n", "5",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["equal"], true);
}

#[test]
fn report_growth_runs() {
    let out = pavane(&[
        "--format", "json",
        "report", "growth", "--k", "3", "--max-n", "8",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["target"], 2);
    assert_eq!(v["rows"][8]["ratio"], "2.00000");
}
