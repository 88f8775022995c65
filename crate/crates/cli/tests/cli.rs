use std::process::{Command, Output};

fn amalgam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amalgam"))
        .args(args)
        .env_remove("AMALGAM_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_self_injective() {
    let o = amalgam(&["check", "self-injective", "zmod(6)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("true"));

    let o = amalgam(&["check", "self-injective", "duplication(zmod(4), ideal(2))"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("false"));
    assert!(out.contains("counterexample ideal:"));
}

#[test]
fn check_idempotents_and_local() {
    let o = amalgam(&["check", "idempotents", "zmod(6)"]);
    assert_eq!(stdout(&o).trim(), "0 1 3 4");
    let o = amalgam(&["check", "local", "fixture(z2t)"]);
    assert_eq!(stdout(&o).trim(), "true");
    let o = amalgam(&["check", "qf", "product(zmod(4), zmod(9))"]);
    assert_eq!(stdout(&o).trim(), "true");
}

#[test]
fn check_json_output() {
    let o = amalgam(&["check", "self-injective", "duplication(zmod(4), ideal(2))", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["what"], "self-injective");
    assert_eq!(v["order"], 8);
    assert_eq!(v["result"], false);
    assert!(v["counterexample_ideal"].is_array());
    let o = amalgam(&["check", "ideals", "zmod(4)", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"], serde_json::json!([[0], [0, 2], [0, 1, 2, 3]]));
}

#[test]
fn parse_and_semantic_errors_are_usage_errors() {
    let o = amalgam(&["check", "local", "zmod(4"]);
    assert_eq!(o.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    assert_eq!(amalgam(&["check", "local", "zmod(0)"]).status.code(), Some(64));
    assert_eq!(amalgam(&["frobnicate"]).status.code(), Some(64));
}

#[test]
fn verify_single_instance() {
    let o = amalgam(&["verify", "--only", "thm-selfinj-char", "--instance", "duplication(zmod(6), ideal(2))", "--verbose"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("consistent"));
}

#[test]
fn verify_unknown_statement() {
    assert_eq!(amalgam(&["verify", "--statements", "unknown-id"]).status.code(), Some(64));
}

#[test]
fn verify_reports_counterexamples() {
    let o = amalgam(&["verify", "--only", "thm-selfinj-char", "--instance", "amalgam(zmod(4), product(zmod(2), zmod(4)), map(0, 5, 2, 7), ideal())"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("COUNTEREXAMPLE"));
}

#[test]
fn verify_resource_limit_exit() {
    let o = Command::new(env!("CARGO_BIN_EXE_amalgam"))
        .args(["verify", "--only", "prop-hom-iso", "--instance", "duplication(zmod(12), ideal(1))"])
        .env("AMALGAM_MAX_ORDER", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn verify_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("out.json");
    let csv = dir.path().join("out.csv");
    let o = amalgam(&["verify", "--max-order", "5", "--statements", "cor-local-never,lemma-product-qf", "--report", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let evaluated = v["summary"]["evaluated"].as_u64().unwrap() as usize;
    let o = amalgam(&["verify", "--max-order", "5", "--statements", "cor-local-never,lemma-product-qf", "--report", csv.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), evaluated + 1);
}

#[test]
fn full_small_campaign_finds_the_known_counterexamples() {
    let o = amalgam(&["verify", "--max-order", "9", "--statements", "all"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("thm-selfinj-char\tamalgam amalgam(zmod(4), product(zmod(2), zmod(4))"));
    assert!(!out.contains("FAILED recheck"));
}

#[test]
fn census_and_ideals() {
    let o = amalgam(&["census", "--max-order", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ring product(zmod(2), zmod(2))"));
    let o = amalgam(&["ideals", "zmod(6)"]);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 4);
    assert!(out.contains("{0 3}\tgenerators 3\tann {0 2 4}\tidempotent 3"));
}
