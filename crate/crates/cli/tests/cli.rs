use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splitknot")).args(args).env_remove("SPLITKNOT_CAP").output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn first_line(args: &[&str]) -> String {
    stdout(args).lines().next().unwrap_or_default().to_string()
}

#[test]
fn alexander_examples() {
    assert_eq!(first_line(&["alexander", "K946"]), "2t^2 - 5t + 2");
    assert_eq!(first_line(&["alexander", "unknot"]), "1");
    assert_eq!(first_line(&["alexander", "trefoil"]), "t^2 - t + 1");
    assert!(stdout(&["alexander", "K_7"]).contains("phi_14^2"));
    assert_eq!(first_line(&["alexander", "stevedore"]), "2t^2 - 5t + 2");
}

#[test]
fn cover_examples() {
    assert_eq!(first_line(&["cover", "K946", "--q", "3"]), "Z/7 + Z/7; metabolizers: 2; pairs: 1");
    assert_eq!(first_line(&["cover", "trefoil", "--q", "2"]), "Z/3; metabolizers: 0");
    assert!(first_line(&["cover", "K946", "--q", "2"]).starts_with("Z/3 + Z/3"));
    assert_eq!(first_line(&["cover", "stevedore", "--q", "2"]), "Z/9; metabolizers: 1; pairs: 0");
    assert_eq!(first_line(&["cover", "unknot", "--q", "5"]), "0; metabolizers: 1; pairs: 1");
}

#[test]
fn check_examples() {
    let out = stdout(&["check", "K", "--q", "3", "--d", "cochran-harvey-horn.json", "--mode", "doubly-vanishing"]);
    assert!(out.starts_with("OBSTRUCTED"), "{}", out);
    assert!(out.contains("<= -3/2"));
    assert!(first_line(&["check", "stevedore", "--q", "2", "--mode", "slice"]).starts_with("NOT_OBSTRUCTED"));
    assert!(first_line(&["check", "K946", "--q", "3", "--mode", "doubly-vanishing"]).starts_with("INCONCLUSIVE"));
    assert!(first_line(&["check", "trefoil", "--q", "2", "--mode", "slice"]).starts_with("OBSTRUCTED"));
    assert!(first_line(&["check", "stevedore", "--q", "2"]).starts_with("OBSTRUCTED"));
}

#[test]
fn split_examples() {
    let out = stdout(&["split", "K + (-1)K_3", "--q", "3", "--d", "cochran-harvey-horn.json"]);
    assert!(out.starts_with("OBSTRUCTED"));
    assert!(out.contains("coprime, "));
    assert!(first_line(&["split", "trefoil + trefoil", "--q", "2"]).starts_with("INCONCLUSIVE"));
    assert!(first_line(&["split", "K + K_3 + K_5"]).starts_with("OBSTRUCTED"));
}

#[test]
fn reports_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["split", "K + (-1)K_3", "--q", "3", "--d", "cochran-harvey-horn.json", "--format", "json"],
        &["check", "K", "--q-max", "5", "--d", "cochran-harvey-horn.json", "--format", "json"],
        &["check", "stevedore", "--q", "2", "--mode", "slice", "--format", "json"],
        &["split", "trefoil + trefoil", "--q", "2", "--format", "json"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let path = dir.path().join(format!("r{}.json", i));
        std::fs::write(&path, stdout(args)).unwrap();
        let out = stdout(&["verify", path.to_str().unwrap()]);
        assert!(out.starts_with("verified: "), "{}", out);
    }
}

#[test]
fn tampered_report_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let json = stdout(&["check", "K", "--q", "3", "--d", "cochran-harvey-horn.json", "--format", "json"]);
    let tampered = json.replace("\"-3/2\"", "\"3/2\"");
    assert_ne!(json, tampered);
    let path = dir.path().join("bad.json");
    std::fs::write(&path, tampered).unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["alexander", "no_such_knot"]).status.code(), Some(2));
    assert_eq!(run(&["check", "K", "--q", "6"]).status.code(), Some(2));
    assert_eq!(run(&["check", "K", "--q", "3", "--d", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["cover", "K946", "--q", "3", "--cap", "48"]).status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_splitknot"))
        .args(["cover", "K946", "--q", "3"])
        .env("SPLITKNOT_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn user_knot_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.json");
    std::fs::write(
        &path,
        r#"{"knots": [{"name": "fig8", "kind": "seifert", "matrix": [[1, 1], [0, -1]]},
                      {"name": "twice", "kind": "sum", "terms": [["K946", 1], ["fig8", 1]]}]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(first_line(&["alexander", "fig8", "--knots", p]), "t^2 - 3t + 1");
    assert_eq!(first_line(&["cover", "twice", "--q", "2", "--knots", p]), "Z/3 + Z/3 + Z/5; metabolizers: 0");
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"knots": [{"name": "x", "kind": "seifert", "matrix": [[2]]}]}"#).unwrap();
    assert_eq!(run(&["alexander", "x", "--knots", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["split", "K + K_3 + K_5", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn sign_flag_keeps_verdicts() {
    for sign in ["negative", "positive"] {
        let out = stdout(&["cover", "K946", "--q", "3", "--sign", sign]);
        assert!(out.starts_with("Z/7 + Z/7; metabolizers: 2; pairs: 1"));
        let out = stdout(&["check", "K", "--q", "3", "--d", "cochran-harvey-horn.json", "--sign", sign]);
        assert!(out.starts_with("OBSTRUCTED"));
    }
}
