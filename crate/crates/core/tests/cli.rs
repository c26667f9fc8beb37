use std::path::Path;
use std::process::{Command, Output};

fn stardual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stardual")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn list_and_info() {
    let o = stardual(&["list"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 5);
    let o = stardual(&["info", "penrose", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["substitution_matrix"], serde_json::json!([[1, 1], [1, 2]]));
    assert!((v["pf_eigenvalue"].as_f64().unwrap() - 2.618033988749895).abs() < 1e-9);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&stardual(&["info", "no_such_fixture"])), 2);
    assert_eq!(code(&stardual(&["frobnicate"])), 2);
    assert_eq!(code(&stardual(&["render", "penrose", "--mode", "attractor", "--iterations", "3"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"name\": ").unwrap();
    assert_eq!(code(&stardual(&["info", path(&bad)])), 2);
    // a file needs an explicit automorphism
    let good = dir.path().join("fib.json");
    assert_eq!(code(&stardual(&["dualize", "fibonacci_squared", "--galois", "3", "--out", path(&good)])), 0);
    assert_eq!(code(&stardual(&["dualize", path(&good)])), 2);
}

#[test]
fn invalid_automorphisms_exit_3() {
    assert_eq!(code(&stardual(&["dualize", "penrose", "--galois", "1"])), 3);
    assert_eq!(code(&stardual(&["dualize", "penrose", "--galois", "5"])), 3);
    assert_eq!(code(&stardual(&["dualize", "ammann_beenker", "--galois", "2"])), 3);
}

#[test]
fn dualize_twice_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let once = dir.path().join("once.json");
    let twice = dir.path().join("twice.json");
    // the inverse of 3 mod 5 is 2
    assert_eq!(code(&stardual(&["dualize", "penrose", "--galois", "3", "--out", path(&once)])), 0);
    assert_eq!(code(&stardual(&["dualize", path(&once), "--galois", "2", "--out", path(&twice)])), 0);
    let text = stardual::io::system_to_json(&stardual::fixtures::fixture("penrose").unwrap().system);
    assert_eq!(std::fs::read_to_string(&twice).unwrap(), text);
}

#[test]
fn dualize_into_directory_names_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = stardual(&["dualize", "penrose", "--out", path(dir.path())]);
    assert_eq!(code(&o), 0);
    let written = dir.path().join("penrose_star.json");
    let s = stardual::io::read_system(&written).unwrap();
    assert_eq!(s.prototiles(), &["S⋆".to_string(), "L⋆".to_string()]);
}

#[test]
fn verify_pass_and_fail() {
    assert_eq!(code(&stardual(&["verify", "fibonacci_squared"])), 0);
    assert_eq!(code(&stardual(&["verify", "penrose"])), 0);
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("wrong.json");
    std::fs::write(
        &sol,
        r#"{"cyclotomic_order":5,"intervals":[[{"coeffs":["0"]},{"coeffs":["1"]}],[{"coeffs":["0"]},{"coeffs":["1"]}]]}"#,
    )
    .unwrap();
    let o = stardual(&["verify", "fibonacci_squared", "--solution", path(&sol)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAIL"));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report.as_array().unwrap().iter().any(|c| c["status"] == "fail"));
}

#[test]
fn check_selfdual_exit_codes() {
    let o = stardual(&["check-selfdual", "ab_aab"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["permutation"], serde_json::json!([1, 0]));
    let o = stardual(&["check-selfdual", "fibonacci_squared"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["obstruction"], "no translate match");
}

#[test]
fn automaton_and_render() {
    let o = stardual(&["export-automaton", "fibonacci_squared"]);
    assert_eq!(code(&o), 0);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 5);
    let dir = tempfile::tempdir().unwrap();
    for mode in ["patch", "attractor"] {
        let out = dir.path().join(format!("{mode}.svg"));
        let o = stardual(&["render", "penrose", "--mode", mode, "--out", path(&out)]);
        assert_eq!(code(&o), 0, "{mode}");
        assert!(std::fs::read_to_string(&out).unwrap().contains("<svg"));
    }
    assert_eq!(code(&stardual(&["render", "penrose", "--mode", "subdivision"])), 2);
}
