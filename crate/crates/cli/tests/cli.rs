use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hhx_cli::commands::{CORRUPTED_PHI, DUAL_NUMBERS};

fn hhx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hhx")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn validate_bundled_document() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write(dir.path(), "dual.json", DUAL_NUMBERS);
    let out = hhx(&["validate", doc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("13 objects, 0 failed"));
}

#[test]
fn non_cocommutative_coalgebra_fails_validation() {
    let doc = r#"{
      "field": "rational",
      "algebras": { "A": { "builtin": "ground" } },
      "coalgebras": {
        "C": {
          "basis": ["g", "h"],
          "coproduct": [[0, 0, 0, "1"], [1, 0, 1, "1"]],
          "counit": [[0, "1"]]
        }
      },
      "measurings": { "psi": { "coalgebra": "C", "source": "A", "target": "A", "table": [[0, 0, 0, "1"]] } }
    }"#;
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.json", doc);
    let out = hhx(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("coalgebra `C` is not cocommutative"), "{text}");
    assert!(text.contains("coalgebra C: FAIL"), "{text}");
}

#[test]
fn dangling_reference_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "d.json", r#"{"field":"rational","modules":{"M":{"algebra":"A","regular":true}}}"#);
    let out = hhx(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("algebra `A` referenced by module `M` is not defined"), "{}", stderr(&out));
}

#[test]
fn parse_error_exits_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "p.json", "{\n  \"field\": \"rational\",\n  \"algebras\": {\"A\": }\n}");
    let out = hhx(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(hhx(&["homology"]).status.code(), Some(2));
    assert_eq!(hhx(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hhx(&["demo", "--field", "prime:4"]).status.code(), Some(2));
}

#[test]
fn homology_table_and_shallow_truncation() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write(dir.path(), "dual.json", DUAL_NUMBERS);
    let doc = doc.to_str().unwrap();
    let out = hhx(&["homology", doc, "--space", "S1", "--algebra", "A", "--module", "M", "--n-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let dims: Vec<String> = stdout(&out)
        .lines()
        .filter_map(|l| {
            let cols: Vec<&str> = l.split_whitespace().collect();
            (cols.len() == 3 && cols[0].parse::<usize>().is_ok()).then(|| cols[1].to_string())
        })
        .collect();
    assert_eq!(dims, vec!["2", "1", "1"]);

    let out = hhx(&["homology", doc, "--space", "S1", "--algebra", "A", "--n-max", "3", "--truncation", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--truncation 4"), "{}", stderr(&out));
}

#[test]
fn unknown_basis_name_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write(dir.path(), "dual.json", DUAL_NUMBERS);
    let out = hhx(&["induced", doc.to_str().unwrap(), "--measuring", "phi", "--t", "q", "--space", "S1", "--n-max", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown basis name `q`"));
}

#[test]
fn corrupted_square_prints_difference_and_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write(dir.path(), "bad.json", CORRUPTED_PHI);
    let out = hhx(&["square", doc.to_str().unwrap(), "--map", "collapse", "--measuring", "phi", "--t", "d", "--n-max", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("entries differ"), "{text}");
    assert!(text.contains("verdict: FAIL"), "{text}");
}

#[test]
fn json_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("r{i}.json"));
        let out = hhx(&["demo", "--json-out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        reports.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
    let v: serde_json::Value = serde_json::from_slice(&reports[0]).unwrap();
    assert_eq!(v["field"], "rational");
    assert_eq!(v["advisory"], false);
    let induced = v["outputs"].as_array().unwrap().iter().find(|o| o["command"] == "induced").unwrap();
    assert_eq!(induced["degrees"][0]["matrix"]["entries"], serde_json::json!([[0, 1, "1"]]));
}

#[test]
fn prime_field_runs_are_advisory() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f2.json");
    let out = hhx(&["demo", "--field", "prime:2", "--json-out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}{}", stdout(&out), stderr(&out));
    assert!(stdout(&out).contains("advisory"));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["advisory"], true);
}

#[test]
fn unnormalized_flag_agrees_on_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let doc = write(dir.path(), "dual.json", DUAL_NUMBERS);
    let doc = doc.to_str().unwrap();
    let args = ["homology", doc, "--space", "S1", "--algebra", "A", "--n-max", "2"];
    let n = stdout(&hhx(&args));
    let u = stdout(&hhx(&[&args[..], &["--unnormalized"]].concat()));
    assert!(u.contains("unnormalized"));
    let dims = |s: &str| -> Vec<String> {
        s.lines().filter_map(|l| l.split_whitespace().nth(1).map(str::to_string)).skip(1).collect()
    };
    assert_eq!(dims(&n), dims(&u));
}
