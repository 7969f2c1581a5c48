//! Runs the `conelab` binary end to end.

use std::path::Path;
use std::process::{Command, Output};

fn conelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conelab")).args(args).env_remove("CONELAB_CACHE").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

#[test]
fn rays_of_met3_are_the_three_cut_vectors() {
    let o = conelab(&["rays", "--cone", "MET", "--n", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(text.lines().next(), Some("conelab v1 SYM n=3 dim=3"));
    assert_eq!(rows, ["0 1 1", "1 0 1", "1 1 0"]);
}

#[test]
fn table2_row_for_ocut5_passes() {
    let o = conelab(&["verify", "--table2", "--cone", "OCUT", "--n", "5"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 7, "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn transform_p_and_q_reproduce_the_worked_example() {
    for (map, want) in [("P", "transform_example_P.txt"), ("Q", "transform_example_Q.txt")] {
        let o = conelab(&["transform", "--map", map, &data("transform_example.txt")]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout(&o), std::fs::read_to_string(data(want)).unwrap(), "map {map}");
    }
}

#[test]
fn transform_reads_stdin_and_writes_output_file() {
    use std::io::Write;
    use std::process::Stdio;
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.txt");
    let mut child = Command::new(env!("CARGO_BIN_EXE_conelab"))
        .args(["transform", "--map", "P", "-", "--output", out.to_str().unwrap()])
        .stdin(Stdio::piped())
        .spawn()
        .unwrap();
    let input = std::fs::read_to_string(data("transform_example.txt")).unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    assert!(child.wait().unwrap().success());
    assert_eq!(std::fs::read_to_string(out).unwrap(), std::fs::read_to_string(data("transform_example_P.txt")).unwrap());
}

#[test]
fn transform_rejects_wrong_space() {
    let o = conelab(&["transform", "--map", "Pinv", &data("transform_example.txt")]);
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(conelab(&["rays", "--cone", "NOPE", "--n", "4"]).status.code(), Some(64));
    assert_eq!(conelab(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(conelab(&["member", "--cone", "MET", "--n", "3", "--vector", "1,x,1"]).status.code(), Some(64));
    assert_eq!(conelab(&["verify", "--clause", "no-such-clause"]).status.code(), Some(64));
}

#[test]
fn membership_is_exact() {
    let inside = conelab(&["member", "--cone", "MET", "--n", "3", "--vector", "1,1,2"]);
    let outside = conelab(&["member", "--cone", "MET", "--n", "3", "--vector", "1,1,3"]);
    assert_eq!(stdout(&inside).trim(), "true");
    assert_eq!(stdout(&outside).trim(), "false");
}

#[test]
fn cache_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let plain = conelab(&["facets", "--cone", "PMET", "--n", "4"]);
    let first = conelab(&["--cache-dir", cache, "facets", "--cone", "PMET", "--n", "4"]);
    let second = conelab(&["--cache-dir", cache, "facets", "--cone", "PMET", "--n", "4"]);
    assert!(plain.status.success());
    assert_eq!(plain.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(files.len(), 2, "{files:?}");
}

#[test]
fn corrupted_cache_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let first = conelab(&["--cache-dir", cache, "rays", "--cone", "PMET", "--n", "3"]);
    let file = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.extension().is_some_and(|x| x == "txt"))
        .unwrap();
    std::fs::write(&file, "conelab v1 PSYM n=3 dim=6\ncoords 11 21 22 31 32 33\n9 9 9 9 9 9\n").unwrap();
    let again = conelab(&["--cache-dir", cache, "rays", "--cone", "PMET", "--n", "3"]);
    assert_eq!(first.stdout, again.stdout);
}

#[test]
fn json_output_parses() {
    let o = conelab(&["--format", "json", "graph", "--cone", "PMET", "--n", "3", "--kind", "ri", "--diameter"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["diameter"], 2);
    let o = conelab(&["--format", "json", "verify", "--table2", "--cone", "PMET", "--n", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn threads_do_not_change_output() {
    let one = conelab(&["--jobs", "1", "rays", "--cone", "PMET", "--n", "4"]);
    let eight = conelab(&["--jobs", "8", "rays", "--cone", "PMET", "--n", "4"]);
    assert_eq!(one.stdout, eight.stdout);
    assert_eq!(stdout(&one).lines().count(), 2 + 62);
}

#[test]
fn zeroone_counts_for_met4() {
    let o = conelab(&["--format", "json", "zeroone", "--cone", "MET", "--n", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["total"], 15);
    assert_eq!(v["extreme"], 7);
}
