use std::path::PathBuf;
use std::process::{Command, Output};

use ffp_core::verify::TheoremReport;

fn ffp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn verify_ex33() {
    let o = ffp(&["verify", "--corpus", "EX33", "--profile", "RES3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("fixed point: 1 (pointwise yes, metric yes)"), "{}", stdout(&o));
}

#[test]
fn verify_cort_counterexample() {
    let o = ffp(&["verify", "--corpus", "CORT_COUNTEREXAMPLE", "--profile", "CORT"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("unique: no"), "{out}");
    assert!(out.contains("uniqueness claim is withdrawn"), "{out}");
}

#[test]
fn not_applicable_exits_two_with_witness() {
    let o = ffp(&["verify", "--corpus", "RES4_BETA1", "--profile", "RES3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("x=1/2, y=1, t=1, lhs=1/2, rhs=3/4"), "{}", stdout(&o));
    assert_eq!(ffp(&["verify", "--corpus", "RES4_BETA1", "--profile", "RES4"]).status.code(), Some(0));
}

#[test]
fn json_report_round_trips() {
    let o = ffp(&["verify", "--corpus", "TH32_EXAMPLE", "--profile", "th32", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let report: TheoremReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.to_json().trim(), text.trim());
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn usage_and_profile_errors_exit_one() {
    let o = ffp(&["verify", "--corpus", "EX33", "--profile", "NOPE"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("NOPE"));
    let o = ffp(&["verify", "--corpus", "CORT_COUNTEREXAMPLE", "--profile", "TH32"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("profile error"), "{}", stderr(&o));
    let o = ffp(&["verify", "--corpus", "EX33", "--instance", "x.json", "--profile", "RES3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = ffp(&["verify", "--corpus", "EX99", "--profile", "RES3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_instance_names_line_and_field() {
    let dir = scratch("malformed");
    let path = dir.join("bad.json");
    std::fs::write(&path, "{\n  \"name\": \"bad\",\n  \"space\": {\"points\": {\"kind\": \"finite\", \"values\": [\"1\"]},\n  \"metric\": {\"kind\": \"ratio\"}, \"tnorm\": \"cosine\", \"space_kind\": \"GV\"}\n}\n").unwrap();
    let o = ffp(&["check-space", "--instance", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("line 4") && err.contains("space.tnorm"), "{err}");
}

#[test]
fn export_then_verify_from_file() {
    let dir = scratch("export");
    let o = ffp(&["corpus", "--corpus", "ONLYF_EXAMPLE", "--export", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let file = dir.join("ONLYF_EXAMPLE.json");
    let o = ffp(&["verify", "--instance", file.to_str().unwrap(), "--profile", "ONLYF"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("common fixed points among probes: {1}"));
}

#[test]
fn corpus_is_deterministic_across_workers() {
    let run = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_ffp")).arg("corpus").env("FFP_WORKERS", workers).output().unwrap()
    };
    let (one, four) = (run("1"), run("4"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&four));
    assert_eq!(stdout(&one).lines().count(), 9);
}

#[test]
fn other_verbs() {
    let o = ffp(&["check-space", "--corpus", "CORT_COUNTEREXAMPLE"]);
    assert_eq!(o.status.code(), Some(0));
    let o = ffp(&["check-pair", "--corpus", "EX1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["uniqueness: beta <= 1"]["status"], "VIOLATED");
    let o = ffp(&["iterate", "--corpus", "EX1", "--time-grid", "1/2,1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("x1 = 1"), "{}", stdout(&o));
    let o = ffp(&["oracle", "--max-points", "2", "--lattice", "0,1/2,3/4,1", "--psi", "affine_half"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 counterexamples"), "{}", stdout(&o));
    let o = ffp(&["oracle", "--max-points", "2", "--lattice", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("empty search space"));
}
