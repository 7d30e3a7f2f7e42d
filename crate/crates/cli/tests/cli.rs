use std::path::PathBuf;
use std::process::{Command, Output};

use milnor_core::ClassReport;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn milnor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_milnor"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn compute_all_on_p4_example() {
    let path = fixture("p4-example.json");
    let out = milnor(&["compute", path.to_str().unwrap(), "--method", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("M[definition] = -H^3"));
    assert!(text.contains("M[pp] = -H^3"));
    assert!(text.contains("c^SM  = 2H + 7H^2 + 9H^3 + 5H^4  (inclusion-exclusion)"));
}

#[test]
fn single_method_does_not_check_agreement() {
    let path = fixture("quadric-tangent-plane.json");
    let out = milnor(&["compute", path.to_str().unwrap(), "--method", "thm1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("M[thm1] = 0"));
}

#[test]
fn json_output_round_trips() {
    let path = fixture("two-plane-pairs-p4.json");
    let out = milnor(&["compute", path.to_str().unwrap(), "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let report: ClassReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
    assert_eq!(report.conventions.aluffi_sign, -1);
}

#[test]
fn crosscheck_smooth_suite_is_all_zero() {
    let path = fixture("smooth-suite.json");
    let out = milnor(&["crosscheck", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().filter(|l| l.contains("  AGREE  ")).collect();
    assert_eq!(rows.len(), 3 * 6 + 5);
    assert!(rows.iter().all(|l| l.trim_end().ends_with(" 0")));
}

#[test]
fn wrong_milnor_fibre_is_caught() {
    let path = fixture("wrong-milnor-fibre.json");
    let out = milnor(&["crosscheck", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text
        .lines()
        .any(|l| l.starts_with("Z1 ") && l.contains("pp") && l.contains("DISAGREE")));
    assert!(text
        .lines()
        .any(|l| l.starts_with("Z1 ") && l.contains("definition") && l.contains("AGREE")));
}

#[test]
fn invalid_input_exits_with_paths() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"ambient": {"kind": "projective", "dim": 3},
            "hypersurfaces": [{"name": "X", "degree": 2,
              "singularity": {"kind": "arrangement", "components": [1, 2]}}]}"#,
    )
    .unwrap();
    let out = milnor(&["compute", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("hypersurfaces[0].singularity.components"));

    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(
        milnor(&["compute", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        milnor(&["compute", "/nonexistent/input.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn non_integral_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("half.json");
    let text = std::fs::read_to_string(fixture("nodal-cubic.json")).unwrap();
    std::fs::write(&path, text.replace("[0, 3, 1]", "[0, 3, \"1/2\"]")).unwrap();
    let out = milnor(&["compute", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("definition"));
}

#[test]
fn identity_command() {
    let args = [
        "identity", "--n", "4", "--r", "3", "--trials", "100", "--seed", "42",
    ];
    let first = milnor(&args);
    assert_eq!(first.status.code(), Some(0));
    assert!(stdout(&first).contains("total failures: 0"));
    let second = milnor(&args);
    assert_eq!(first.stdout, second.stdout);

    assert_eq!(
        milnor(&["identity", "--n", "4", "--r", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        milnor(&["identity", "--n", "3", "--r", "4"]).status.code(),
        Some(2)
    );
}
