use std::process::{Command, Output};

fn qlogic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlogic"))
        .args(args)
        .env_remove("QLOGIC_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn passing_check_exits_zero() {
    let out = qlogic(&["check", "--algebra", "C(3) + R(1)", "--samples", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["version"], 1);
    assert_eq!(v["spec"], "C(3) + R(1)");
    assert_eq!(v["seed"], 42);
    assert_eq!(v["checks"].as_array().unwrap().len(), 12);
}

#[test]
fn spin_check_fails_uniqueness() {
    let out = qlogic(&["check", "--algebra", "spin(3)", "--samples", "20", "--only", "A,counterexample"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    let uniq = checks.iter().find(|c| c["name"] == "A.uniqueness").unwrap();
    assert_eq!(uniq["passed"], false);
    let ce = checks.iter().find(|c| c["name"] == "counterexample").unwrap();
    assert_eq!(ce["passed"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("A.uniqueness"));
}

#[test]
fn parse_errors_exit_two() {
    let out = qlogic(&["check", "--algebra", "O(4)"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("octonionic factor only k=3"), "{err}");
    assert!(out.stdout.is_empty());

    let out = qlogic(&["check", "--algebra", "C(3) +"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 6"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qlogic(&["check"]).status.code(), Some(2));
    assert_eq!(qlogic(&["check", "--algebra", "C(2)", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(qlogic(&["check", "--algebra", "C(2)", "--tol-override", "bogus=1"]).status.code(), Some(2));
    assert_eq!(qlogic(&["check", "--algebra", "C(2)", "--tol-override", "lattice"]).status.code(), Some(2));
    assert_eq!(qlogic(&["interference", "--algebra", "C(3)", "--order", "4"]).status.code(), Some(2));
    assert_eq!(qlogic(&["interference", "--algebra", "C(2)", "--order", "3"]).status.code(), Some(2));
    assert_eq!(qlogic(&["counterexample", "spin", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn tolerance_override_can_fail_a_check() {
    let out = qlogic(&[
        "check", "--algebra", "R(3)", "--samples", "10", "--only", "C", "--tol-override", "C.symmetry=1e-300",
    ]);
    let v = json(&out);
    let c = &v["checks"][0];
    assert_eq!(c["threshold"], 1e-300);
    assert!(c["residual"].as_f64().unwrap() > 1e-300);
    assert_eq!(c["passed"], false);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("C.symmetry failed"));
}

#[test]
fn empty_filter_gives_empty_passing_report() {
    let out = qlogic(&["check", "--algebra", "H(2)", "--only", ""]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["checks"].as_array().unwrap().is_empty());
    assert_eq!(v["passed"], true);
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qlogic"))
        .args(["check", "--algebra", "R(2)", "--samples", "5", "--only", "lattice"])
        .env("QLOGIC_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 9);
    let explicit = Command::new(env!("CARGO_BIN_EXE_qlogic"))
        .args(["check", "--algebra", "R(2)", "--samples", "5", "--only", "lattice", "--seed", "3"])
        .env("QLOGIC_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(json(&explicit)["seed"], 3);
}

#[test]
fn text_format_is_a_table() {
    let out = qlogic(&["check", "--algebra", "C(2)", "--samples", "5", "--format", "text", "--only", "lattice,spectral"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("algebra C(2)  seed 42"));
    assert!(text.contains("spectral.reconstruction"));
    assert!(text.trim_end().ends_with("overall: pass"));
}

#[test]
fn counterexample_with_custom_direction() {
    let out = qlogic(&["counterexample", "spin", "--n", "4", "--u0", "1,1,0,0", "--u1=-1,1,0,0", "--value", "0.2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let c = &v["counterexample"];
    assert_eq!(c["mu_at_e"], 1.0);
    assert_eq!(c["nu_at_e"], 1.0);
    assert!((c["deviation"].as_f64().unwrap() - 0.3).abs() < 1e-12);
    assert_eq!(v["lift"]["spec"], "spin(4) + R(2)");

    let none = qlogic(&["counterexample", "spin", "--n", "3", "--value", "0.5"]);
    assert_eq!(none.status.code(), Some(1));
    assert_eq!(json(&none)["counterexample"]["deviation"], 0.0);
}

#[test]
fn interference_commands() {
    let out = qlogic(&["interference", "--algebra", "H(3)", "--order", "3", "--samples", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["vanishes"], true);
    assert!(v["max_abs"].as_f64().unwrap() <= 1e-8);

    let out = qlogic(&["interference", "--algebra", "C(3)", "--order", "2", "--search", "--samples", "200"]);
    assert!(json(&out)["max_abs"].as_f64().unwrap() >= 0.1);
}
