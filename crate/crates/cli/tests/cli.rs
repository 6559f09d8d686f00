use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn dbe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dbe")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn temp_file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn lines_count_on_both_fixtures() {
    for name in ["fig3-left.txt", "fig3-right.txt"] {
        let o = dbe(&["lines-count", &fixture(name)]);
        assert!(o.status.success());
        let out = stdout(&o);
        assert!(out.starts_with("n=7 lines="), "{out}");
        assert!(out.trim_end().ends_with("universal=no"), "{out}");
        let k: usize = out.split_whitespace().nth(1).unwrap()["lines=".len()..].parse().unwrap();
        assert!(k >= 8);
    }
}

#[test]
fn graph6_input_is_detected() {
    // P4 in graph6.
    let f = temp_file("Ch\n");
    let o = dbe(&["lines-count", f.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("universal=yes"));
}

#[test]
fn lines_show_lists_every_line() {
    let file = fixture("fig3-left.txt");
    let count = stdout(&dbe(&["lines-count", &file]));
    let k: usize = count.split_whitespace().nth(1).unwrap()["lines=".len()..].parse().unwrap();
    let shown = stdout(&dbe(&["lines-show", &file, "--pairs"]));
    assert_eq!(shown.lines().count(), k);
    assert!(shown.lines().all(|l| l.contains(" <- (")));
}

#[test]
fn bisplit_check_reports_refinement() {
    let o = dbe(&["bisplit-check", &fixture("fig3-right.txt"), "--refined"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("bisplit: yes"));
    assert!(out.contains("X_Y="));
}

#[test]
fn non_bisplit_graph_exits_zero_for_check_and_two_for_proof() {
    // K4 has no bisplit partition.
    let f = temp_file("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let path = f.path().to_str().unwrap();
    let o = dbe(&["bisplit-check", path]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "bisplit: no");
    assert_eq!(dbe(&["verify-proof", path]).status.code(), Some(2));
}

#[test]
fn verify_proof_json_round_trips() {
    let o = dbe(&["verify-proof", &fixture("fig3-left.txt"), "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["route"], "antipodal_pair");
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
    let again: serde_json::Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
}

#[test]
fn verify_theorem_small_sweep() {
    let o = dbe(&["verify-theorem", "--max-n", "6", "--full-proof", "--workers", "2", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);
    assert_eq!(v["sizes"].as_array().unwrap().len(), 5);
}

#[test]
fn verify_theorem_rejects_oversized_bound() {
    let o = dbe(&["verify-theorem", "--max-n", "11"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn verify_lemmas_summary_line() {
    let o = dbe(&["verify-lemmas", "--bound", "50"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "lemma1: OK lemma2: {(1,2),(2,2),(3,3)} OK trinomial: OK");
    let j = dbe(&["verify-lemmas", "--bound", "50", "--json"]);
    let _: serde_json::Value = serde_json::from_str(&stdout(&j)).unwrap();
}

#[test]
fn gen_bisplit_writes_graph6_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("n6.g6");
    let o = dbe(&["gen-bisplit", "--n", "6", "--graph6", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 64);
    let first = dir.path().join("first.g6");
    std::fs::write(&first, text.lines().next().unwrap()).unwrap();
    assert!(dbe(&["bisplit-check", first.to_str().unwrap()]).status.success());
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(dbe(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(dbe(&["lines-count", "/definitely/missing"]).status.code(), Some(2));
    let f = temp_file("3 5\n0 1\n");
    let o = dbe(&["lines-count", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}
