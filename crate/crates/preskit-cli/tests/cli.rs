use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_preskit"))
        .args(args)
        .env_remove("PRESKIT_CATALOG")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn invariants_of_one_entry() {
    let o = run(&["invariants", "T6k+1", "5", "--index", "4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "dim=5 mu=4 bo=8\n");
}

#[test]
fn enumerate_reports_count() {
    let o = run(&["enumerate", "T6k+1", "7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("count=1"));
}

#[test]
fn pairs_by_index() {
    let o = run(&["pairs", "T6k+5", "4"]);
    assert_eq!(stdout(&o), "([3],[5]) ([4],[6])\n");
}

#[test]
fn mmp_trace_and_snapshots() {
    let dir = std::env::temp_dir().join(format!("preskit-snaps-{}", std::process::id()));
    let o = run(&[
        "mmp",
        "T6k+1",
        "5",
        "4",
        "--snapshots",
        dir.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("CONTRACT fb\n"));
    assert!(out.contains("FLIP C=b2 chain=[5,2] -> C+=c newsing=[]\n"));
    assert!(out.contains("E6: db1 dm1\n"));
    assert!(dir.join("step0.dot").exists());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn classify_prints_model_and_case() {
    let o = run(&["classify", "T6k+1", "5", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "Quadric\n");
    let o = run(&["classify", "T6k+5", "4", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("CaseII\n"));
}

#[test]
fn validate_flags_rejections() {
    let o = run(&["validate", &fixture("graphs.txt")]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("T6k+1 5 [4] ok dim=5 mu=4"));
    assert!(out.contains("T6k+1 5 [9] rejected"));
}

#[test]
fn export_dot_emits_graphs() {
    let o = run(&["export-dot", &fixture("graphs.txt")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("graph G {").count(), 2);
}

#[test]
fn catalog_check_reports_known_failures() {
    let o = run(&["catalog", "check"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("failures=9\n"));
}

#[test]
fn usage_and_domain_errors() {
    assert_eq!(run(&["invariants", "X9", "3"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "T6k+1", "1"]).status.code(), Some(1));
    assert_eq!(run(&["validate", "/nonexistent"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn missing_catalog_is_an_input_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_preskit"))
        .args(["invariants", "T6k+1", "5"])
        .env("PRESKIT_CATALOG", "/nonexistent/catalog.txt")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn list_families_and_determinism() {
    let a = run(&["--list-families"]);
    assert_eq!(stdout(&a).lines().count(), 15);
    let x = run(&["mmp", "O12k+7", "3", "3"]);
    let y = run(&["mmp", "O12k+7", "3", "3"]);
    assert_eq!(x.stdout, y.stdout);
}
