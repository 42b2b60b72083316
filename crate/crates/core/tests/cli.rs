use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use vtl_core::{ClassTable, Element};

fn vtl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vtl"))
        .args(args)
        .env_remove("VTL_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn read_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_vtl"))
        .args(args)
        .env_remove("VTL_FORMAT")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn emit_explicit_table_line() {
    let o = vtl(&["emit", "--n", "4", "--form", "explicit", "--format", "text"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "f_4 = (1/4!)[4]_4 - (2/(4!(d+4)))[2]_4 + (1/(3(d+2)(d+4)))[0]_4\n"
    );
}

#[test]
fn emit_single_strand() {
    let o = vtl(&["emit", "--n", "1", "--form", "recursive"]);
    assert_eq!(stdout(&o), "f_1 = 1_1\n");
}

#[test]
fn constructions_emit_the_same_table() {
    let base = stdout(&vtl(&["emit", "--n", "5"]));
    for form in ["recursive", "simplified"] {
        assert_eq!(stdout(&vtl(&["emit", "--n", "5", "--form", form])), base);
    }
}

#[test]
fn eval_pole_cites_excluded_set() {
    let o = vtl(&["eval", "--n", "2", "--d", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("{0, -2, ..., -2n+4}"), "{err}");
    let o = vtl(&["eval", "--n", "5", "--d", "-6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("{0, -2, -4, -6}"));
}

#[test]
fn eval_at_a_point() {
    let o = vtl(&["eval", "--n", "2", "--d", "3", "--expand", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let coeffs: Vec<&str> = v["terms"].as_array().unwrap().iter().map(|t| t["coeff"].as_str().unwrap()).collect();
    assert_eq!(coeffs, ["-1/3", "1/2", "1/2"]);
    let o = vtl(&["eval", "--n", "3", "--d", "-1/2"]);
    assert_eq!(stdout(&o), "f_3(d = -1/2) = (1/3!)[3]_3 - (2/9)[1]_3\n");
}

#[test]
fn invalid_inputs_exit_nonzero_with_one_line() {
    for args in [
        &["emit", "--n", "0"][..],
        &["emit", "--n", "9"],
        &["enumerate", "--n", "3", "--k", "2"],
        &["eval", "--n", "2", "--d", "1/0"],
        &["verify", "--n", "9", "--suite", "trace"],
        &["verify", "--n", "3", "--suite", "bogus"],
    ] {
        let o = vtl(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&o).is_empty(), "{args:?}");
    }
    let o = vtl(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_round_trip_through_read() {
    let dir = tempfile::tempdir().unwrap();
    for (n, form) in [(3, "recursive"), (4, "explicit"), (4, "simplified")] {
        let path = dir.path().join(format!("f{n}_{form}.json"));
        let n_s = n.to_string();
        let o = vtl(&["emit", "--n", &n_s, "--form", form, "--expand", "--format", "json", "--output", path.to_str().unwrap()]);
        assert!(o.status.success());
        let original = fs::read_to_string(&path).unwrap();
        let element: Element = serde_json::from_str(&original).unwrap();
        assert_eq!(element, *vtl_core::projector::f_recursive(n).unwrap());
        let back = vtl(&["read", path.to_str().unwrap(), "--format", "json"]);
        assert_eq!(stdout(&back), original);
    }
    let table = stdout(&vtl(&["emit", "--n", "4", "--format", "json"]));
    let parsed: ClassTable = serde_json::from_str(&table).unwrap();
    assert_eq!(parsed, vtl_core::projector::f_explicit(4).unwrap());
    assert_eq!(stdout(&read_stdin(&["read", "--format", "json"], &table)), table);
    let expanded = stdout(&read_stdin(&["read", "--expand", "--format", "json"], &table));
    let e: Element = serde_json::from_str(&expanded).unwrap();
    assert_eq!(e, *vtl_core::projector::f_recursive(4).unwrap());
}

#[test]
fn streamed_expansion_matches_element_output() {
    for format in ["json", "text"] {
        let streamed = stdout(&vtl(&["emit", "--n", "4", "--expand", "--format", format]));
        let built = stdout(&vtl(&["emit", "--n", "4", "--form", "recursive", "--expand", "--format", format]));
        assert_eq!(streamed, built, "{format}");
    }
    let text = stdout(&vtl(&["emit", "--n", "3", "--expand"]));
    assert_eq!(text.lines().count(), 15);
    assert!(text.lines().next().unwrap().starts_with("1/6\t"));
}

#[test]
fn format_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_vtl"))
        .args(["emit", "--n", "2"])
        .env("VTL_FORMAT", "json")
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 2);
}

#[test]
fn verify_is_reproducible_and_passes() {
    let a = vtl(&["verify", "--n", "4", "--format", "json"]);
    let b = vtl(&["verify", "--n", "4", "--format", "json"]);
    assert!(a.status.success(), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let reports: Value = serde_json::from_str(&stdout(&a)).unwrap();
    let suites: Vec<&str> = reports.as_array().unwrap().iter().map(|r| r["suite"].as_str().unwrap()).collect();
    assert!(suites.contains(&"trace") && suites.contains(&"structural"));
    let o = vtl(&["verify", "--n", "3", "--suite", "trace"]);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("PASS lemma6_1.recursion")));
    assert!(text.lines().any(|l| l.starts_with("INFO- lemma6_1.match [n=2,variant=paper]")));
}

#[test]
fn verify_evaluated_mode_records_points() {
    let o = vtl(&["verify", "--n", "6", "--suite", "characterization", "--format", "json", "--seed", "5"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &v[0];
    assert_eq!(r["mode"]["kind"], "evaluated");
    assert_eq!(r["mode"]["points"].as_array().unwrap().len(), 3);
    assert_eq!(r["seed"], 5);
}

#[test]
fn trace_reports_both_variants() {
    let o = vtl(&["trace", "--n", "2", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["matching"], serde_json::json!(["alpha_product"]));
    let text = stdout(&vtl(&["trace", "--n", "2"]));
    assert!(text.starts_with("tr(f_2) = (d^2 + d - 2)/2\n"), "{text}");
}

#[test]
fn enumerate_counts() {
    assert_eq!(stdout(&vtl(&["enumerate", "--n", "4"])).lines().count(), 105);
    assert_eq!(stdout(&vtl(&["enumerate", "--n", "4", "--k", "0"])).lines().count(), 9);
    let v: Value = serde_json::from_str(&stdout(&vtl(&["enumerate", "--n", "2", "--format", "json"]))).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(v[0]["partner"], serde_json::json!([1, 0, 3, 2]));
}

#[test]
fn relations_subcommand() {
    let o = vtl(&["relations", "--n", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS eq1.e_v_e [i=1,j=2]"));
}
