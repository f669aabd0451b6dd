//! End-to-end tests of the coxdec binary: exit codes, diagnostics,
//! output determinism, and JSON round-trips.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coxdec"))
}

fn write_fixture(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(body.as_bytes()).unwrap();
    path
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

const A2: &str = "2\n1 3\n3 1\n";
const B3: &str = "3\n1 4 2\n4 1 3\n2 3 1\n";
const AFFINE_A1: &str = "2\n1 inf\ninf 1\n";
const Z4: &str = "4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n";

#[test]
fn classify_finite_and_affine() {
    let dir = tempfile::tempdir().unwrap();
    let a2 = write_fixture(&dir, "a2.cox", A2);
    let aff = write_fixture(&dir, "aff.cox", AFFINE_A1);
    let out = bin().arg("classify").arg(&a2).arg(&aff).output().unwrap();
    let text = stdout_of(&out);
    let lines: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["kind"], "Finite");
    assert_eq!(lines[0]["signature"]["p"], 2);
    assert_eq!(lines[1]["kind"], "Affine");
    assert_eq!(lines[1]["signature"], serde_json::json!({"p": 1, "q": 0, "r": 1}));
}

#[test]
fn decompose_b3_splits_off_the_center() {
    let dir = tempfile::tempdir().unwrap();
    let b3 = write_fixture(&dir, "b3.cox", B3);
    let out = bin().arg("decompose").arg(&b3).output().unwrap();
    let v: Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    let factors = v["factors"].as_array().unwrap();
    let mut sizes: Vec<u64> = factors.iter().map(|f| f["size"].as_u64().unwrap()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![2, 24]);
    assert!(factors.iter().any(|f| f["central"] == true));
}

#[test]
fn malformed_matrix_reports_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_fixture(&dir, "bad.cox", "2\n1 3\n4 1\n");
    let out = bin().arg("classify").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2, column 3"), "stderr: {err}");
}

#[test]
fn missing_file_is_a_parse_error() {
    let out = bin().arg("classify").arg("/nonexistent/x.cox").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_cayley_table_names_the_violated_axiom() {
    let dir = tempfile::tempdir().unwrap();
    // Row 0 is not the identity row.
    let bad = write_fixture(&dir, "bad.tab", "2\n1 0\n0 1\n");
    let out = bin().arg("center").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("identity"), "stderr: {err}");
}

#[test]
fn closure_budget_flag_and_env_give_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let b3 = write_fixture(&dir, "b3.cox", B3);
    let out = bin()
        .arg("build-group")
        .arg(&b3)
        .arg("--closure-budget")
        .arg("5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = bin()
        .arg("build-group")
        .arg(&b3)
        .env("COXDEC_CLOSURE_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    // The flag wins over the environment.
    let out = bin()
        .arg("build-group")
        .arg(&b3)
        .arg("--closure-budget")
        .arg("100")
        .env("COXDEC_CLOSURE_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let b3 = write_fixture(&dir, "b3.cox", B3);
    let run = || {
        bin()
            .arg("cross-validate")
            .arg(&b3)
            .output()
            .map(|o| stdout_of(&o))
            .unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn emitted_system_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let b3 = write_fixture(&dir, "b3.cox", B3);
    let first = bin().arg("classify").arg(&b3).output().unwrap();
    let first = stdout_of(&first);
    let v: Value = serde_json::from_str(first.trim()).unwrap();
    let json_path = write_fixture(&dir, "b3.json", &v["system"].to_string());
    let second = bin().arg("classify").arg(&json_path).output().unwrap();
    assert_eq!(first, stdout_of(&second));
}

#[test]
fn cayley_commands_on_z4() {
    let dir = tempfile::tempdir().unwrap();
    let z4 = write_fixture(&dir, "z4.tab", Z4);
    let out = bin().arg("center").arg(&z4).output().unwrap();
    let v: Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(v["subgroup_order"], 4);
    let out = bin().arg("remak").arg(&z4).output().unwrap();
    let v: Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(v["factors"].as_array().unwrap().len(), 1);
    let out = bin().arg("kn").arg("--n").arg("2").arg(&z4).output().unwrap();
    let v: Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(v["kn"], 2);
}

#[test]
fn kn_free_matches_known_values() {
    let out = bin().arg("kn-free").arg("--g").arg("2").arg("--n").arg("2").output().unwrap();
    let v: Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(v["kn"], 4);
}

#[test]
fn graph_dot_output() {
    let dir = tempfile::tempdir().unwrap();
    let b3 = write_fixture(&dir, "b3.cox", B3);
    let out = bin()
        .arg("graph")
        .arg(&b3)
        .arg("--format")
        .arg("dot")
        .output()
        .unwrap();
    let text = stdout_of(&out);
    assert!(text.starts_with("graph"), "got: {text}");
    // dot is rejected everywhere else.
    let out = bin()
        .arg("classify")
        .arg(&b3)
        .arg("--format")
        .arg("dot")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lie_of_round_trips_through_lie_decompose() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .arg("lie-of")
        .arg("--p").arg("2")
        .arg("--q").arg("2")
        .arg("--r").arg("0")
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(v["dim"], 6);
    let path = write_fixture(&dir, "so22.json", &v.to_string());
    let out = bin().arg("lie-decompose").arg(&path).output().unwrap();
    let v: Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(v["verdict"], "Split");
    assert_eq!(v["ideals"].as_array().unwrap().len(), 2);
}

#[test]
fn multiple_inputs_preserve_order_with_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let a2 = write_fixture(&dir, "a2.cox", A2);
    let b3 = write_fixture(&dir, "b3.cox", B3);
    let serial = bin().arg("signature").arg(&a2).arg(&b3).output().unwrap();
    let parallel = bin()
        .arg("signature")
        .arg(&a2)
        .arg(&b3)
        .arg("--jobs")
        .arg("2")
        .output()
        .unwrap();
    assert_eq!(stdout_of(&serial), stdout_of(&parallel));
}
