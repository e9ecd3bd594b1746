use std::io::Write;
use std::process::{Command, Output, Stdio};

use hodge_core::formulas::{hp_moduli_fixed_det, hp_semistable_closed};
use hodge_core::hn::hn_gl_oracle;
use hodge_core::{BivarPoly, Degree, RatFun2, TruncSeries2};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodge-series"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hodge-series"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn fixed_determinant_rank_two_plain() {
    let o = run(&[
        "compute",
        "--group",
        "GL2",
        "--degree",
        "1",
        "--genus",
        "2",
        "--what",
        "fixed-det",
        "--format",
        "plain",
    ]);
    assert_eq!(code(&o), 0);
    // (1+u^2 v)(1+u v^2) + uv(1+u)(1+v), expanded
    assert_eq!(stdout(&o).trim(), "1 + u*v + 2*u^2*v + 2*u*v^2 + u^2*v^2 + u^3*v^3");
}

#[test]
fn classifying_space_of_sl2() {
    let o = run(&["compute", "--group", "SL2", "--genus", "2", "--what", "classifying"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "1/(1 - u^2*v^2)");
}

#[test]
fn gl1_expansion() {
    let o = run(&[
        "compute",
        "--group",
        "GL1",
        "--degree",
        "0",
        "--genus",
        "2",
        "--what",
        "semistable",
        "--expand",
        "2",
    ]);
    assert_eq!(code(&o), 0);
    let last = stdout(&o).lines().last().unwrap().to_string();
    assert_eq!(last, "expansion to total degree 2: 1 + 2*u + 2*v + u^2 + 5*u*v + v^2");
}

#[test]
fn gl1_expansion_json_coefficients() {
    let o = run(&[
        "compute", "--group", "GL1", "--genus", "2", "--expand", "2", "--format", "json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let s: TruncSeries2 = serde_json::from_value(v["series"].clone()).unwrap();
    let expected = [
        ((0, 0), 1),
        ((1, 0), 2),
        ((0, 1), 2),
        ((2, 0), 1),
        ((1, 1), 5),
        ((0, 2), 1),
    ];
    assert_eq!(s.terms().count(), expected.len());
    for ((i, j), c) in expected {
        assert_eq!(s.coeff(i, j), c.into(), "({i},{j})");
    }
}

#[test]
fn specializations_of_fixed_determinant() {
    let base = [
        "specialize",
        "--group",
        "GL2",
        "--degree",
        "1",
        "--genus",
        "2",
        "--what",
        "fixed-det",
        "--at",
    ];
    let at = |k: &str| {
        let mut a = base.to_vec();
        a.push(k);
        let o = run(&a);
        assert_eq!(code(&o), 0);
        stdout(&o).trim().to_string()
    };
    // (1+t)(1-t^2)
    assert_eq!(at("chi-t"), "1 + t - t^2 - t^3");
    assert_eq!(at("euler"), "0");
    assert_eq!(at("signature"), "0");
    assert_eq!(at("poincare"), "1 + t^2 + 4*t^3 + t^4 + t^6");
}

#[test]
fn specialize_json() {
    let o = run(&[
        "specialize",
        "--group",
        "GL2",
        "--degree",
        "1",
        "--what",
        "fixed-det",
        "--at",
        "chi-t",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["numerator"], serde_json::json!(["1", "1", "-1", "-1"]));
    assert_eq!(v["at"], "chi-t");
    assert!(v.get("denominator").is_none());
}

#[test]
fn compute_json_round_trips() {
    for (group, degree, what) in [
        ("GL2", "1", "semistable"),
        ("GL3", "1", "moduli"),
        ("SO5", "1", "stack"),
        ("GL2", "1", "fixed-det"),
    ] {
        let o = run(&[
            "compute", "--group", group, "--degree", degree, "--genus", "3", "--what", what, "--format", "json",
            "--expand", "6",
        ]);
        assert_eq!(code(&o), 0, "{group} {what}");
        let text = stdout(&o);
        let v: Value = serde_json::from_str(&text).unwrap();
        for key in ["numerator", "denominator", "series"] {
            let printed = serde_json::to_string(&v[key]).unwrap();
            let back = if key == "series" {
                serde_json::to_string(&serde_json::from_value::<TruncSeries2>(v[key].clone()).unwrap()).unwrap()
            } else {
                serde_json::to_string(&serde_json::from_value::<BivarPoly>(v[key].clone()).unwrap()).unwrap()
            };
            assert_eq!(printed, back, "{group} {what} {key}");
        }
    }
}

#[test]
fn compute_json_matches_library() {
    let o = run(&[
        "compute", "--group", "GL2", "--degree", "1", "--genus", "3", "--format", "json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let num: BivarPoly = serde_json::from_value(v["numerator"].clone()).unwrap();
    let den: BivarPoly = serde_json::from_value(v["denominator"].clone()).unwrap();
    let r = RatFun2::new(num, den).unwrap();
    let expected = hp_semistable_closed(&"GL2".parse().unwrap(), &Degree(vec![1]), 3).unwrap();
    assert!(r.rat_eq(&expected));

    let o = run(&[
        "compute",
        "--group",
        "GL3",
        "--degree",
        "2",
        "--genus",
        "2",
        "--what",
        "fixed-det",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let num: BivarPoly = serde_json::from_value(v["numerator"].clone()).unwrap();
    assert!(RatFun2::from_poly(num).rat_eq(&hp_moduli_fixed_det(3, 2, 2).unwrap()));
    assert_eq!(v["denominator"], serde_json::json!([[0, 0, "1"]]));
}

#[test]
fn latex_output() {
    let o = run(&[
        "compute", "--group", "GL2", "--degree", "1", "--genus", "2", "--format", "latex",
    ]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("\\frac{"), "{s}");
    assert!(s.contains("(1-(uv)^{2})"), "{s}");
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec![
            "compute", "--group", "SO5", "--degree", "1", "--genus", "3", "--expand", "8", "--format", "json",
        ],
        vec!["verify", "--suite", "classical", "--max-rank", "2"],
        vec!["strata", "--group", "Sp2", "--genus", "2", "--max-codim", "10"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(code(&a), 0);
    }
}

#[test]
fn verify_corollaries_reports_euler_line() {
    let o = run(&["verify", "--suite", "corollaries"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.lines().any(|l| l == "euler(GL2,d=1,g=2) = 0 PASS"), "{s}");
    assert!(
        s.lines().any(|l| l == "chi_t(GL2,d=1,g=2) = 1 + t - t^2 - t^3 PASS"),
        "{s}"
    );
    assert!(!s.contains("FAIL"));
}

#[test]
fn verify_recursion_example() {
    let o = run(&[
        "verify",
        "--suite",
        "recursion",
        "--max-rank",
        "3",
        "--genus-list",
        "2,3",
        "--order",
        "20",
    ]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.lines().any(|l| l == "recursion(GL3,d=1,g=2,N=20) PASS"), "{s}");
    assert!(!s.contains("FAIL"));
}

#[test]
fn verify_classical_covers_each_family() {
    let o = run(&["verify", "--suite", "classical", "--max-rank", "4", "--genus-list", "2"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    for g in ["GL4", "SL4", "SO9", "Sp4", "SO8"] {
        assert!(
            s.lines()
                .any(|l| l.starts_with(&format!("classical({g},")) && l.ends_with("PASS")),
            "{g}"
        );
    }
}

#[test]
fn verify_json_report() {
    let o = run(&["verify", "--suite", "good-case", "--max-rank", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "good-case");
    assert_eq!(v["failed"], 0);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(v["passed"], checks.len());
    let gl2 = checks.iter().find(|c| c["name"] == "good-case(GL2,d=1)").unwrap();
    assert_eq!(gl2["value"], "true");
}

#[test]
fn strata_csv_matches_oracle_count() {
    let o = run(&[
        "strata",
        "--group",
        "GL3",
        "--degree",
        "1",
        "--genus",
        "2",
        "--max-codim",
        "12",
    ]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("I,delta,mu,codim"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), hn_gl_oracle(3, 1, 12, 2).len());
    assert!(rows.contains(&"2,1 0 0,1/2 1/2 0,3"), "{s}");
    assert!(rows.iter().all(|r| r.split(',').count() == 4));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["compute", "--group", "XY3"],
        vec!["compute", "--group", "GL2", "--degree", "a"],
        vec!["compute", "--group", "GL2", "--genus", "9"],
        vec!["compute", "--group", "SL2", "--degree", "1"],
        vec!["compute", "--group", "SO5", "--what", "fixed-det", "--degree", "1"],
        vec!["compute", "--group", "GL2", "--what", "nothing"],
        vec!["specialize", "--group", "GL2"],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn large_genus_needs_override() {
    let o = run(&[
        "compute",
        "--group",
        "GL1",
        "--genus",
        "9",
        "--allow-large-genus",
        "--what",
        "stack",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn precondition_failures_exit_three() {
    for args in [
        vec!["compute", "--group", "GL2", "--degree", "0", "--what", "moduli"],
        vec!["compute", "--group", "GL2", "--degree", "2", "--what", "fixed-det"],
        vec!["compute", "--group", "GL2", "--degree", "1", "--genus", "1"],
        vec![
            "specialize",
            "--group",
            "SO5",
            "--degree",
            "1",
            "--what",
            "moduli",
            "--at",
            "euler",
        ],
    ] {
        let o = run(&args);
        assert_eq!(code(&o), 3, "{args:?}");
    }
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_hodge-series"))
        .args(["compute", "--group", "GL1"])
        .env("HODGE_SERIES_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_hodge-series"))
        .args(["compute", "--group", "GL1"])
        .env("HODGE_SERIES_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn vhs_identity() {
    let tau = r#"{"g": 2, "tau": [[["0","1"],["0","0"]],[["0","0"],["0","1"]]]}"#;
    let o = run_stdin(&["vhs", "--input", "-", "--format", "json"], tau);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["a"],
        serde_json::json!([[["1/2", "0"], ["0", "0"]], [["0", "0"], ["1/2", "0"]]])
    );
    assert_eq!(
        v["b"],
        serde_json::json!([[["0", "-1/2"], ["0", "0"]], [["0", "0"], ["0", "-1/2"]]])
    );
    assert_eq!(v["basis_consistency"], true);
}

#[test]
fn vhs_plain_and_decimals() {
    let tau = r#"{"g": 1, "tau": [[["0.5", "1.25"]]]}"#;
    let o = run_stdin(&["vhs", "--input", "-"], tau);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("1/2 + 1/5*i"), "{s}");
    assert!(s.contains("-2/5*i"), "{s}");
    assert!(s.ends_with("basis consistency: PASS\n"));
    let o = run_stdin(&["vhs", "--input", "-", "--decimals", "3"], tau);
    assert!(stdout(&o).contains("0.500 + 0.200*i"));
}

#[test]
fn vhs_rejects_bad_input() {
    let asym = r#"{"g": 2, "tau": [[["0","1"],["1","0"]],[["0","0"],["0","1"]]]}"#;
    assert_eq!(code(&run_stdin(&["vhs", "--input", "-"], asym)), 3);
    let not_pd = r#"{"g": 1, "tau": [[["0","-1"]]]}"#;
    assert_eq!(code(&run_stdin(&["vhs", "--input", "-"], not_pd)), 3);
    assert_eq!(code(&run_stdin(&["vhs", "--input", "-"], "{\"g\": 1")), 2);
    assert_eq!(
        code(&run_stdin(
            &["vhs", "--input", "-"],
            r#"{"g": 1, "tau": [[["x","1"]]]}"#
        )),
        2
    );
    assert_eq!(code(&run(&["vhs", "--input", "/nonexistent/tau.json"])), 2);
}
