use std::process::{Command, Output};

use serde_json::Value;
use tghyper::report::Report;

fn tghyper(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tghyper"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Report {
    Report::from_json(std::str::from_utf8(&out.stdout).unwrap()).expect("stdout is a report")
}

#[test]
fn tg_check_subalgebra_exits_zero() {
    let out = tghyper(&[
        "tg-check",
        "--builtin",
        "sl2:a=1,b=2",
        "--subspace",
        "0,1,0;0,0,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.command, "tg-check");
    assert_eq!(r.result["totally_geodesic"], Value::Bool(true));
    assert_eq!(r.residuals["tg"], 0.0);
    assert_eq!(r.input_digest.len(), 64);
}

#[test]
fn tg_check_failure_exits_two_with_witness() {
    // span(Z, X2, Y) in the basis (Z, X1, X2, Y).
    let out = tghyper(&[
        "tg-check",
        "--builtin",
        "nonhomo",
        "--subspace",
        "1,0,0,0;0,0,1,0;0,0,0,1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r.result["totally_geodesic"], Value::Bool(false));
    assert!(r.result["witness"].is_object());
}

#[test]
fn classify_reports_case_tag() {
    let out = tghyper(&[
        "classify",
        "--builtin",
        "nonhomo",
        "--normal",
        "0,0,0,1",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.case_tag.as_deref(), Some("CircleNormal"));
    assert_eq!(r.result["frenet"]["curvatures"][0].as_f64(), Some(2.0));

    let out = tghyper(&["classify", "--builtin", "sl2:a=1,b=2", "--normal", "1,0,0"]);
    assert_eq!(report(&out).case_tag.as_deref(), Some("HelixOrderTwo"));
}

#[test]
fn frenet_on_sl2() {
    let out = tghyper(&[
        "frenet",
        "--builtin",
        "sl2:a=0.5,b=2",
        "--normal",
        "1,0,0",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let k: Vec<f64> = serde_json::from_value(report(&out).result["curvatures"].clone()).unwrap();
    assert!((k[0] - 4.0).abs() < 1e-12 && (k[1] - 1.0).abs() < 1e-12);
}

#[test]
fn search_output_is_byte_identical() {
    let args = ["search", "--builtin", "nonhomo", "--json", "--seed", "3"];
    let (a, b) = (tghyper(&args), tghyper(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let normals = &report(&a).result["search"]["normals"];
    assert_eq!(normals.as_array().unwrap().len(), 1);
}

#[test]
fn verify_single_entry() {
    let out = tghyper(&["verify", "twisted-h2", "--tol", "grid=50", "--json"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert_eq!(report(&out).result["pass"], Value::Bool(true));
}

#[test]
fn out_flag_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("info.json");
    let out = tghyper(&[
        "info",
        "--builtin",
        "heisenberg",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r = Report::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.command, "info");
}

#[test]
fn algebra_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sl2.json");
    std::fs::write(
        &path,
        r#"{"dim": 3, "basis": ["E1","E2","E3"],
            "brackets": [{"i":0,"j":1,"coeffs":[0,0,2]},
                         {"i":0,"j":2,"coeffs":[2,-2,0]},
                         {"i":1,"j":2,"coeffs":[0,-2,0]}],
            "gram": [[1,0,0],[0,1,0],[0,0,1]]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let out = tghyper(&["tg-check", "--algebra", p, "--subspace", "0,1,0;0,0,1"]);
    assert_eq!(out.status.code(), Some(0));

    std::fs::write(
        &path,
        r#"{"dim": 3, "basis": [], "brackets": [], "gram": []}"#,
    )
    .unwrap();
    let out = tghyper(&["info", "--algebra", p]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out).result["error"]["kind"], "Syntax");
}

#[test]
fn geodesic_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("g.csv");
    let out = tghyper(&[
        "geodesic",
        "--builtin",
        "hyperbolic2",
        "--x0",
        "0.8,0.3",
        "--v0",
        "0.6,0.9",
        "--tmax",
        "1",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,x1,x2,v1,v2"));
    assert_eq!(lines.count(), 1001);
    assert!(report(&out).residuals["max_speed_drift"] < 1e-4);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["frobnicate"],
        vec!["info"],
        vec!["info", "--builtin", "nosuch"],
        vec!["tg-check", "--builtin", "sl2", "--subspace", "1,0"],
        vec!["info", "--builtin", "sl2", "--tol", "tg=-1"],
    ] {
        let out = tghyper(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(report(&out).result["error"]["kind"].is_string(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let out = tghyper(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("tg-check"));
}
