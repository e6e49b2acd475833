use std::process::{Command, Output};

use nonrep::fixtures::fixture_text;

fn nonrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_word_reports_an_overlap() {
    let o = nonrep(&["check-word", "212321232", "--properties", "overlap"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "overlap at 1 period 3");
}

#[test]
fn avoid_without_one_two() {
    let o = nonrep(&["avoid", "--forbid", "12", "--alphabet", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("max length 13"));
}

#[test]
fn census_table_is_the_fixture_for_any_thread_count() {
    let expected = fixture_text("census_rank11").unwrap();
    for threads in ["1", "4"] {
        let o = nonrep(&["search", "squarefree", "--rank", "11", "--threads", threads]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), expected);
    }
}

#[test]
fn apply_and_fixed_point() {
    let o = nonrep(&["apply", "thue_morse", "10"]);
    assert_eq!(stdout(&o).trim(), "1001");
    let o = nonrep(&["fixed-point", "thue_morse", "--seed", "1", "--len", "16"]);
    assert!(stdout(&o).trim().starts_with("1001011001101001"));
    let o = nonrep(&["apply", "121|232|313", "12"]);
    assert_eq!(stdout(&o).trim(), "121232");
}

#[test]
fn bad_input_exits_with_two() {
    for args in [
        vec!["check-word", "12x3"],
        vec!["search", "squarefree", "--rank", "1"],
        vec!["search", "squarefree", "--rank", "99"],
        vec!["avoid", "--forbid", "12", "--budget", "0"],
        vec!["classify", "no_such_fixture"],
        vec!["frobnicate"],
    ] {
        assert_eq!(nonrep(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn reproduce_selected_claims() {
    let o = nonrep(&["reproduce", "--claims", "1,2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = nonrep(&["--bound-K", "2", "reproduce", "--claims", "4"]);
    assert!(o.status.success(), "{}", stdout(&o));
    // rank-11 survivors need three-letter preimages
    let o = nonrep(&["--bound-K", "2", "reproduce", "--claims", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("rank 11: 0 of 144 refuted"));
}

#[test]
fn tampered_census_fails_with_a_diff() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.txt");
    let mut lines: Vec<&str> = fixture_text("census_rank11").unwrap().lines().collect();
    lines.remove(3);
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    let o = nonrep(&["reproduce", "--claims", "1", "--census", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL"));
    assert!(out.lines().any(|l| l.trim_start().starts_with("+ ")));
}

#[test]
fn json_output_is_versioned_and_can_go_to_a_file() {
    let o = nonrep(&["--format", "json", "classify", "leech"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema_version"], 1);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let o = nonrep(&[
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
        "search",
        "cyclic",
        "--rank",
        "13",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["count"], 6);
}

#[test]
fn dot_output_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tree.dot");
    let o = nonrep(&["avoid", "--forbid", "12", "--dot", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("digraph"));
}
