use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfoam")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn check_axioms_exit_codes() {
    assert_eq!(run(&["check-axioms", "--builtin", "r-tilde"]).status.code(), Some(0));
    assert_eq!(run(&["check-axioms", &data("corrupted.gfam")]).status.code(), Some(1));
    assert_eq!(run(&["check-axioms", "/nonexistent.gfam"]).status.code(), Some(2));
}

#[test]
fn verify_cocycle_exit_codes() {
    assert_eq!(run(&["verify-cocycle", "--builtin", "mochizuki"]).status.code(), Some(0));
    assert_eq!(run(&["verify-cocycle", &data("zero.theta")]).status.code(), Some(0));
    assert_eq!(run(&["verify-cocycle", &data("perturbed.theta")]).status.code(), Some(1));
}

#[test]
fn colorings() {
    assert_eq!(stdout(&run(&["colorings", &data("5_2.graph"), "--family", "r-tilde"])), "84");
    assert_eq!(stdout(&run(&["colorings", &data("theta0.graph"), "--family", "trivial"])), "8");
    let o = run(&["--format", "json", "colorings", &data("circle.graph")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 12);
    assert_eq!(v["colorings"].as_array().unwrap().len(), 12);
}

#[test]
fn data_dir_resolution() {
    let o = Command::new(env!("CARGO_BIN_EXE_qfoam"))
        .args(["colorings", "data/circle.graph"])
        .env("QFOAM_DATA", data(""))
        .current_dir(std::env::temp_dir())
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "12");
}

#[test]
fn invariants() {
    let o = run(&["invariant", &data("5_2_2twist.movie"), "--family", "r-tilde", "--theta", "mochizuki"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "60 + 12t + 12t^2");
    assert_eq!(stdout(&run(&["invariant", &data("sphere.movie")])), "12");
    let o = run(&["--format", "json", "invariant", &data("sphere.movie")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["multiset"]["counts"], serde_json::json!([12, 0, 0]));
    assert_eq!(run(&["invariant", &data("5_2.graph")]).status.code(), Some(2));
}

#[test]
fn twist_spin_round_trip() {
    let out = std::env::temp_dir().join(format!("qfoam-cli-{}.movie", std::process::id()));
    let out_s = out.display().to_string();
    assert_eq!(run(&["twist-spin", &data("5_2.tangle"), "-n", "2", "-o", &out_s]).status.code(), Some(0));
    assert_eq!(stdout(&run(&["invariant", &out_s])), "60 + 12t + 12t^2");
    std::fs::remove_file(&out).unwrap();
    let o = run(&["twist-spin", &data("5_2.tangle"), "-n", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("birth 0 -> cup0 cap0"));
}
