use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn catalog_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../catalog")
        .join(format!("{name}.json"))
}

fn selfsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selfsim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(cmd: &str, name: &str, extra: &[&str]) -> Output {
    let path = catalog_file(name);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    selfsim(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn shipped_catalog_matches_builtin_entries() {
    let listed = stdout(&selfsim(&["catalog"]));
    let names: Vec<&str> = listed.lines().collect();
    assert!(names.len() >= 12);
    for name in names {
        let shipped = fs::read_to_string(catalog_file(name)).unwrap();
        let builtin = stdout(&selfsim(&["catalog", name]));
        assert_eq!(shipped.trim(), builtin.trim(), "{name}");
        assert_eq!(
            run_on("validate", name, &[]).status.code(),
            Some(0),
            "{name}"
        );
    }
}

#[test]
fn validate_reports_each_violation() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc: Value =
        serde_json::from_str(&fs::read_to_string(catalog_file("cyclic-n2")).unwrap()).unwrap();
    doc["cocycle"]["1"]["e1"] = Value::from("0");
    let bad = write_temp(&dir, "bad.json", &doc.to_string());
    let out = selfsim(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.lines().count() >= 2);
    assert!(text.contains("CocycleLawViolated: g=1, h=1, e=e1"));
}

#[test]
fn parse_and_io_failures_have_distinct_codes() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write_temp(&dir, "broken.json", "{\"vertices\": [");
    assert_eq!(
        selfsim(&["validate", broken.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
    let dup = write_temp(
        &dir,
        "dup.json",
        r#"{"vertices": [], "vertices": [], "edges": []}"#,
    );
    assert_eq!(
        selfsim(&["validate", dup.to_str().unwrap()]).status.code(),
        Some(3)
    );
    let unknown = write_temp(
        &dir,
        "unknown.json",
        r#"{"vertices": [], "edges": [], "extra": 1}"#,
    );
    assert_eq!(
        selfsim(&["validate", unknown.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
    let missing = dir.path().join("missing.json");
    assert_eq!(
        selfsim(&["validate", missing.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn quotient_of_ring_example() {
    let first = run_on("quotient", "cyclic-n2", &[]);
    assert_eq!(first.status.code(), Some(0));
    let doc = json(&first);
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 2);
    let edges = doc["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 4);
    let loops: Vec<&str> = edges
        .iter()
        .filter(|e| e["d"] == e["r"])
        .map(|e| e["id"].as_str().unwrap())
        .collect();
    assert_eq!(loops, ["~f1", "~g2"]);
    assert_eq!(doc["quotient_of"]["orbit_of"]["w2"], "[w1]");

    let second = run_on("quotient", "cyclic-n2", &[]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn quotient_output_reparses() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.json");
    let o = run_on("quotient", "cyclic-n3", &["--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v = selfsim(&["validate", out.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    let again = selfsim(&["quotient", out.to_str().unwrap()]);
    assert_eq!(json(&again)["edges"].as_array().unwrap().len(), 5);
}

#[test]
fn trivial_group_quotient_copies_the_graph() {
    let doc = json(&run_on("quotient", "two-cycle", &[]));
    assert_eq!(doc["vertices"], serde_json::json!(["[u]", "[w]"]));
    assert_eq!(doc["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn classify_ring_example_is_kirchberg() {
    let o = run_on("classify", "cyclic-n2", &["--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["dichotomy"], "purely infinite (Kirchberg)");
    assert_eq!(r["verdicts"]["simple"]["value"], "Yes");
    assert_eq!(r["verdicts"]["purely_infinite"]["value"], "Yes");
    assert_eq!(r["verdicts"]["stably_finite"]["value"], "No");
}

#[test]
fn json_and_text_reports_agree() {
    for name in [
        "cyclic-n3",
        "one-loop",
        "z2-trivial-two-loops",
        "disconnected-orbits",
        "single-edge",
    ] {
        let j = json(&run_on("classify", name, &["--json"]));
        let text = stdout(&run_on("classify", name, &["--text"]));
        for (key, v) in j["verdicts"].as_object().unwrap() {
            let line = format!("{key}: {}", v["value"].as_str().unwrap());
            assert!(text.lines().any(|l| l.starts_with(&line)), "{name}: {line}");
        }
        assert!(text.contains(&format!("dichotomy: {}", j["dichotomy"].as_str().unwrap())));
        assert_eq!(
            stdout(&run_on("classify", name, &[])),
            text,
            "text is the default"
        );
    }
}

#[test]
fn degraded_inputs_still_exit_zero() {
    let npf = run_on("classify", "z2-trivial-two-loops", &["--json"]);
    assert_eq!(npf.status.code(), Some(0));
    let r = json(&npf);
    assert_eq!(r["verdicts"]["pseudo_free"]["value"], "No");
    assert_eq!(r["verdicts"]["simple"]["value"], "Unknown");
    assert_eq!(r["verdicts"]["simple"]["witness"]["kind"], "gap");

    let sourced = run_on("classify", "single-edge", &["--json"]);
    assert_eq!(sourced.status.code(), Some(0));
    assert!(json(&sourced)["banner"].is_string());
}

#[test]
fn trace_on_micro_graphs() {
    assert_eq!(
        json(&run_on("trace", "two-loops", &["--json"]))["exists"],
        false
    );
    let one = json(&run_on("trace", "one-loop", &["--json"]));
    assert_eq!(one["weights"]["v"], "1");
    let two = json(&run_on("trace", "two-cycle", &["--json"]));
    assert_eq!(two["weights"], serde_json::json!({"u": "1/2", "w": "1/2"}));
    let ring = json(&run_on(
        "trace",
        "cyclic-n2",
        &["--graph", "quotient", "--json"],
    ));
    assert_eq!(ring["exists"], false);
    assert!(
        ring["infeasibility_certificate"].is_array()
            || ring["infeasibility_certificate"].is_object()
    );
}

#[test]
fn monoid_on_micro_graphs() {
    let expect = [
        ("two-loops", "Group"),
        ("one-loop", "NotGroup"),
        ("two-cycle", "NotGroup"),
    ];
    for (name, verdict) in expect {
        let m = json(&run_on("monoid", name, &["--json"]));
        assert_eq!(m["verdict"], verdict, "{name}");
    }
    let text = stdout(&run_on("monoid", "two-loops", &[]));
    assert!(text.contains("v = 2v"));
    let q = json(&run_on(
        "monoid",
        "cyclic-n2",
        &["--graph", "quotient", "--json"],
    ));
    assert_eq!(q["heuristic"], true);
}

#[test]
fn monoid_bounds_are_respected() {
    let o = run_on(
        "monoid",
        "cyclic-n5",
        &["--monoid-bound", "2", "--identity-bound", "1", "--json"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "Unknown");
}
