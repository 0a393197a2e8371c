use std::path::Path;
use std::process::{Command, Output};

fn exstructa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exstructa"))
        .args(args)
        .env("EXSTRUCTA_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture_text() -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/sink_a3.json");
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn classify_sink_fixture_passes() {
    let o = exstructa(&["classify", "--algebra", "sink-a3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 8);
    let jh = rows.iter().filter(|r| &r[4] == "true").count();
    assert_eq!(jh, 6);
}

#[test]
fn classify_a3_reports_aw_disagreement_with_exit_1() {
    let o = exstructa(&["classify", "--algebra", "A3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let summary: serde_json::Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    assert_eq!(summary["status"], "fail");
    assert_eq!(summary["inconsistent_structures"], serde_json::json!(["4", "5"]));
    let table: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = table["rows"].as_array().unwrap();
    assert_eq!(rows.iter().filter(|r| r["is_jh"] == true).count(), 7);
}

#[test]
fn csv_and_markdown_carry_the_same_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = exstructa(&["classify", "--algebra", "source-a3", "--out", out]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv_text = std::fs::read_to_string(dir.path().join("classification.csv")).unwrap();
    let md_text = std::fs::read_to_string(dir.path().join("classification.md")).unwrap();

    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let header: Vec<String> = reader.headers().unwrap().iter().map(str::to_string).collect();
    let csv_rows: Vec<Vec<String>> = reader
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect();
    let md_rows: Vec<Vec<String>> = md_text
        .lines()
        .filter(|l| l.starts_with('|'))
        .map(|l| {
            l.trim()
                .trim_matches('|')
                .split('|')
                .map(|c| c.trim().to_string())
                .collect()
        })
        .collect();
    assert_eq!(md_rows[0], header);
    assert_eq!(&md_rows[2..], &csv_rows[..]);
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["classify", "--algebra", "linear:2,2,1", "--format", "csv"];
    let a = exstructa(&args);
    let b = exstructa(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_file_drives_classify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("job.json");
    std::fs::write(
        &path,
        r#"{"algebra": "A2", "field": 3, "dim_bound": 4, "structures": ["0", "1"], "checks": ["axioms"]}"#,
    )
    .unwrap();
    let o = exstructa(&["classify", "--config", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().skip(1).all(|l| l.contains(",true,true,true,")), "{text}");
}

#[test]
fn unknown_config_field_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("job.json");
    std::fs::write(&path, r#"{"algebra": "A2", "colour": "red"}"#).unwrap();
    let o = exstructa(&["classify", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_algebra_exits_2() {
    let o = exstructa(&["classify", "--algebra", "linear:1,5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn verify_eb_suite_passes() {
    let o = exstructa(&["verify", "--algebra", "linear-upto:3", "--suite", "eb"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("PASS eb"), "{}", stdout(&o));
}

#[test]
fn verify_aw_suite_reports_fast_brute_mismatch() {
    let o = exstructa(&["verify", "--algebra", "A3", "--suite", "aw", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failure = report["suites"][0]["failure"].as_str().unwrap();
    assert!(failure.contains("fast AW test disagrees with brute force"), "{failure}");
}

#[test]
fn verify_counting_suite_passes_on_a3() {
    let o = exstructa(&["verify", "--algebra", "A3", "--suite", "counting"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn corrupted_fixture_is_caught() {
    let good = fixture_text();
    let bad = good.replacen(r#""epic": { "1": [[1]] }"#, r#""epic": { "1": [[0]] }"#, 1);
    assert_ne!(good, bad);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, bad).unwrap();

    let o = exstructa(&["verify", "--algebra", path.to_str().unwrap(), "--suite", "axioms"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL fixture"), "{}", stdout(&o));

    let ok_path = dir.path().join("sink.json");
    std::fs::write(&ok_path, good).unwrap();
    let o = exstructa(&["verify", "--algebra", ok_path.to_str().unwrap(), "--suite", "axioms"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn graph_ar_quiver_is_dot() {
    let o = exstructa(&["graph", "--target", "ar", "--algebra", "A3"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("style=dotted").count(), 3);
}

#[test]
fn graph_poset_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("poset.dot");
    let o = exstructa(&[
        "graph",
        "--target",
        "poset",
        "--algebra",
        "A2",
        "--object",
        "(1,2)",
        "--structure",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let dot = std::fs::read_to_string(path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches(" -> ").count(), 2);
}

#[test]
fn graph_poset_needs_object() {
    let o = exstructa(&["graph", "--target", "poset"]);
    assert_eq!(o.status.code(), Some(2));
}
