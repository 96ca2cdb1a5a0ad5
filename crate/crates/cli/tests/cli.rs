use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(rel: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures");
    root.join(rel).to_string_lossy().into_owned()
}

fn jordan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jordan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn classify_prints_the_class() {
    let o = jordan(&["classify", &fixture("algebras/J4_8.alg")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "J4_8");
}

#[test]
fn classify_real_on_a_real_law() {
    let o = jordan(&["classify", "--real", &fixture("algebras/R3_5.alg")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "R3_5");
}

#[test]
fn invariants_of_the_first_class() {
    let o = jordan(&["invariants", &fixture("algebras/J3_1.alg")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("s=(3)"), "{out}");
    assert!(out.contains("orbit=6"), "{out}");
    assert!(out.contains("center=1"), "{out}");
}

#[test]
fn parse_errors_exit_2_with_a_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.alg");
    std::fs::write(&path, "dim 3\nfield Q\ne1*e1 = e2\ne1*e9 = e3\n").unwrap();
    let o = jordan(&["classify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(jordan(&["bogus"]).status.code(), Some(2));
    assert_eq!(jordan(&["classify"]).status.code(), Some(2));
    let missing = jordan(&["classify", "/nonexistent/x.alg"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn verify_edge_success_and_failure() {
    let ok = jordan(&[
        "verify-edge",
        &fixture("algebras/J4_1.alg"),
        "--family",
        &fixture("families/phi1_phi7.fam"),
        "--target",
        "J4_7",
    ]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    assert!(stdout(&ok).contains("verified"));

    let singular = jordan(&[
        "verify-edge",
        &fixture("algebras/J4_4.alg"),
        "--family",
        &fixture("families/phi4_phi8.fam"),
        "--target",
        "J4_8",
    ]);
    assert_eq!(singular.status.code(), Some(1));
    assert!(stderr(&singular).contains("singular"));

    let wrong = jordan(&[
        "verify-edge",
        &fixture("algebras/J4_1.alg"),
        "--family",
        &fixture("families/phi1_phi7.fam"),
        "--target",
        "J4_9",
    ]);
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn limit_prints_a_parseable_algebra() {
    let o = jordan(&[
        "limit",
        &fixture("algebras/J4_6.alg"),
        "--family",
        &fixture("families/phi6_phi8.fam"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("# class J4_8"), "{out}");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lim.alg");
    std::fs::write(&path, &out).unwrap();
    let again = jordan(&["classify", path.to_str().unwrap()]);
    assert_eq!(stdout(&again).trim(), "J4_8");
}

#[test]
fn deform_reports_the_class_at_one() {
    let o = jordan(&[
        "deform",
        &fixture("algebras/J4_3.alg"),
        "--direction",
        &fixture("deformations/mu1.def"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("class at t=1 J4_2"), "{out}");
    assert!(out.contains("deformation true"), "{out}");
}

#[test]
fn squaring_of_the_lie_law_is_abelian() {
    let o = jordan(&["squaring", &fixture("algebras/beta4.alg")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# class J3_ab"), "{}", stdout(&o));
}

#[test]
fn graph_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("j4.dot");
    let o = jordan(&["graph", "J4", "--dot", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("sources J4_1 J4_2"), "{out}");
    assert!(out.contains("acyclic true"), "{out}");
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph J4 {"));
    assert!(dot.contains("\"J4_11\" -> \"J4_12\";"));
    assert_eq!(jordan(&["graph", "J5"]).status.code(), Some(2));
}

#[test]
fn verify_paper_passes_and_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = jordan(&["verify-paper", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("== errata"));
    assert!(out.contains("t^(3/3)"));
    assert!(out.contains("family phi4_phi8"));
    assert!(out.contains("deformation entry 4"));
    assert!(out.contains("real orbit R3_5"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(json["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    assert!(!json["errata"].as_array().unwrap().is_empty());

    let second = jordan(&["verify-paper"]);
    assert_eq!(stdout(&second), out);
}
