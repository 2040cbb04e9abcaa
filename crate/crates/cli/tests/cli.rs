use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wl-schreier"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

const HEPTAGON: &str = r#"{"schema_version": 1, "instance": {"kind": "heptagon_pair"}, "checks": ["upper", "coherence"]}"#;

#[test]
fn heptagon_run_passes() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "h.json", HEPTAGON);
    let out = dir.path().join("report.json");
    let o = run(&["run", "--spec", spec.to_str().unwrap(), "--out", out.to_str().unwrap(), "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(report["diameter"], 4);
    assert_eq!(report["wl_count"], 3);
    assert_eq!(report["passed"], true);
    assert_eq!(report["instance"]["point_labels"][13], "14");
    assert!(report["snapshots"].as_array().unwrap().len() == 4);
    assert_eq!(report["coherence"]["digest"].as_str().unwrap().len(), 64);
}

#[test]
fn unknown_kind_exits_two() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "bad.json", r#"{"schema_version": 1, "instance": {"kind": "unknown"}}"#);
    let o = run(&["run", "--spec", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse"));
    let o = run(&["run", "--spec", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn resource_cap_exits_three() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        dir.path(),
        "big.json",
        r#"{"schema_version": 1, "instance": {"kind": "cycle", "n": 50}, "caps": {"vertices": 20}}"#,
    );
    assert_eq!(run(&["run", "--spec", spec.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn bad_witness_and_iteration_cap() {
    // a user witness that is not an automorphism is rejected as invalid input
    let dir = TempDir::new().unwrap();
    let spec = write(
        dir.path(),
        "w.json",
        r#"{"schema_version": 1, "instance": {"kind": "cycle", "n": 6},
            "checks": ["lower_general"], "witnesses": [{"type": "permutation", "phi": [1, 0, 2, 3, 4, 5]}]}"#,
    );
    assert_eq!(run(&["run", "--spec", spec.to_str().unwrap()]).status.code(), Some(2));

    // cycle(64) needs 5 refining steps
    let spec = write(
        dir.path(),
        "cut.json",
        r#"{"schema_version": 1, "instance": {"kind": "cycle", "n": 64}, "caps": {"iterations": 2}}"#,
    );
    assert_eq!(run(&["run", "--spec", spec.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn reports_are_byte_identical_without_timestamp() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "h.json", HEPTAGON);
    let a = run(&["run", "--spec", spec.to_str().unwrap(), "--no-timestamp"]);
    let b = run(&["run", "--spec", spec.to_str().unwrap(), "--no-timestamp"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("timestamp"));
    let c = run(&["run", "--spec", spec.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&c.stdout).contains("timestamp"));
}

#[test]
fn checks_flag_overrides_spec() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "c.json", r#"{"schema_version": 1, "instance": {"kind": "cycle", "n": 8}}"#);
    let o = run(&[
        "run", "--spec", spec.to_str().unwrap(), "--no-snapshots", "--no-timestamp",
        "--checks", "cayley_exact,bartholdi,lower_general",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(report.get("snapshots").is_none());
    assert_eq!(report["bartholdi"].as_array().unwrap().len(), 3);
    let theorems: Vec<&str> = report["bounds"].as_array().unwrap().iter().map(|b| b["theorem"].as_str().unwrap()).collect();
    assert_eq!(theorems, vec!["cayley_exact", "lower_general"]);
    assert_eq!(run(&["run", "--spec", spec.to_str().unwrap(), "--checks", "nope"]).status.code(), Some(2));
}

#[test]
fn corpus_run_with_csv() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.json", HEPTAGON);
    let b = write(dir.path(), "b.json", r#"{"schema_version": 1, "name": "c8", "instance": {"kind": "cycle", "n": 8}}"#);
    let csv = dir.path().join("summary.csv");
    let o = run(&[
        "run", "--spec", a.to_str().unwrap(), "--spec", b.to_str().unwrap(),
        "--no-snapshots", "--no-timestamp", "--csv", csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 2);
    let text = fs::read_to_string(csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("spec,name,kind,vertices,diameter"));
    assert!(lines[2].contains(",c8,cycle,8,4,4,2,true,0,"));
}

#[test]
fn examples_catalog() {
    let o = run(&["examples"]);
    assert_eq!(o.status.code(), Some(0));
    let catalog: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let kinds: Vec<&str> = catalog.as_array().unwrap().iter().map(|e| e["kind"].as_str().unwrap()).collect();
    assert!(kinds.contains(&"heptagon_pair"));
    assert_eq!(kinds.len(), 6);
}

#[test]
fn dump_and_refine_round_trip() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "c5.json", r#"{"schema_version": 1, "instance": {"kind": "cycle", "n": 5}}"#);
    let dumped = dir.path().join("c5.config.json");
    let o = run(&["dump", "--spec", spec.to_str().unwrap(), "--out", dumped.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&dumped).unwrap()).unwrap();
    assert_eq!(doc["table"].as_array().unwrap().len(), 4);

    let o = run(&["refine", "--config", dumped.to_str().unwrap(), "--no-snapshots"]);
    assert_eq!(o.status.code(), Some(0));
    let trace: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let report = run(&["run", "--spec", spec.to_str().unwrap(), "--no-snapshots", "--no-timestamp"]);
    let report: serde_json::Value = serde_json::from_slice(&report.stdout).unwrap();
    assert_eq!(trace["wl_count"], report["wl_count"]);
    assert_eq!(trace["wl_count"], 1);

    let garbage = write(dir.path(), "garbage.json", "{not json");
    assert_eq!(run(&["refine", "--config", garbage.to_str().unwrap()]).status.code(), Some(2));
}
