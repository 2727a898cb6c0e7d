use std::process::{Command, Output};

use serde_json::Value;

fn ddfkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ddfkit"))
        .args(args)
        .env_remove("DDFKIT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// The report without its timing field.
fn stable(out: &Output) -> Value {
    let mut v = json(out);
    v.as_object_mut().unwrap().remove("timing");
    v
}

const FIG4: [&str; 10] = [
    "--tech", "figure4", "--y", "0.5,0.5", "--x", "1,1", "--gy", "0.5,0.5", "--gx", "0,0",
];

fn eval(extra: &[&str]) -> Output {
    let mut args = vec!["--json", "eval"];
    args.extend(FIG4);
    args.extend(extra);
    ddfkit(&args)
}

#[test]
fn eval_closed_figure4() {
    let out = eval(&["--method", "closed"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let value = v["results"]["value"].as_f64().unwrap();
    assert!((value - (2.0 * 3f64.sqrt() - 3.0)).abs() <= 1e-12);
    assert_eq!(v["results"]["method"], "closed");
}

#[test]
fn eval_bisect_reports_iterations() {
    let v = json(&eval(&["--method", "bisect"]));
    assert_eq!(v["results"]["method"], "bisect");
    assert!(v["results"]["iterations"].as_u64().unwrap() > 0);
    assert!((v["results"]["value"].as_f64().unwrap() - 0.464_101_615_137_754_6).abs() <= 1e-8);
}

#[test]
fn eval_grid_close_to_closed() {
    let v = json(&eval(&["--method", "grid", "--step", "1e-4"]));
    assert!((v["results"]["value"].as_f64().unwrap() - 0.464_101_615_137_754_6).abs() <= 1e-4);
    assert_eq!(v["results"]["truncated"], true);
}

#[test]
fn eval_text_output() {
    let mut args = vec!["eval"];
    args.extend(FIG4);
    let out = ddfkit(&args);
    assert!(stdout(&out).starts_with("value: 0.46410161513775"), "{}", stdout(&out));
    assert!(stdout(&out).contains("method: closed"));
}

#[test]
fn eval_zero_bundle() {
    let out = ddfkit(&[
        "--json", "eval", "--tech", "figure4", "--y", "0,0", "--x", "0,0", "--gy", "1,0", "--gx", "0,1",
    ]);
    assert_eq!(json(&out)["results"]["value"].as_f64(), Some(0.0));
}

#[test]
fn neg_infinity_is_string() {
    let out = ddfkit(&[
        "--json",
        "eval",
        "--tech",
        "polyhedral_a",
        "--y",
        "0,5",
        "--x",
        "1",
        "--gy",
        "1,0",
        "--gx",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["value"], "-inf");
    let text = ddfkit(&[
        "eval",
        "--tech",
        "polyhedral_a",
        "--y",
        "0,5",
        "--x",
        "1",
        "--gy",
        "1,0",
        "--gx",
        "0",
    ]);
    assert!(stdout(&text).contains("value: -inf"));
}

#[test]
fn unsymmetric_t_via_cli() {
    let out = ddfkit(&[
        "--json",
        "eval",
        "--tech",
        "polyhedral_a",
        "--y",
        "0,0.5",
        "--x",
        "1",
        "--t-output",
        "1",
    ]);
    assert_eq!(json(&out)["results"]["value"].as_f64(), Some(1.5));
}

#[test]
fn dimension_mismatch_exits_3() {
    let out = ddfkit(&[
        "eval", "--tech", "figure4", "--y", "0.5", "--x", "1,1", "--gy", "1", "--gx", "0,0",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn invalid_params_exit_2_with_report() {
    let tech = r#"{"kind":"quadratic_separable","b":[1,1],"a":[1,1],"B":[[1,2],[2,1]]}"#;
    let out = ddfkit(&["--json", "check", "--tech", tech]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    let details = v["results"]["error"]["details"]["validation"].to_string();
    assert!(details.contains("positive semidefinite"), "{details}");
}

#[test]
fn tech_file_is_read() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig4.json");
    std::fs::write(
        &path,
        r#"{"kind":"quadratic_separable","b":[1,1],"a":[1,1],"B":[[1,0],[0,1]]}"#,
    )
    .unwrap();
    let out = ddfkit(&[
        "--json",
        "eval",
        "--tech",
        path.to_str().unwrap(),
        "--y",
        "0.5,0.5",
        "--x",
        "1,1",
        "--gy",
        "0.5,0.5",
        "--gx",
        "0,0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let missing = ddfkit(&[
        "eval",
        "--tech",
        "/nonexistent.json",
        "--y",
        "1",
        "--x",
        "1",
        "--gy",
        "1",
        "--gx",
        "0",
    ]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn malformed_numbers_and_negative_bundles_exit_2() {
    let out = ddfkit(&[
        "eval", "--tech", "figure4", "--y", "a,1", "--x", "1,1", "--gy", "1,1", "--gx", "0,0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = ddfkit(&[
        "eval", "--tech", "figure4", "--y", "-1,1", "--x", "1,1", "--gy", "1,1", "--gx", "0,0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_figure4_all_d_properties_pass() {
    let out = ddfkit(&[
        "--json",
        "check",
        "--tech",
        "figure4",
        "--samples",
        "200",
        "--seed",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let props = v["results"]["properties"].as_array().unwrap();
    assert_eq!(props.len(), 6);
    assert!(props.iter().all(|p| p["passed"] == true));
    assert!(props.iter().any(|p| p["property"] == "D4"));
}

#[test]
fn check_technology_properties() {
    let out = ddfkit(&[
        "check",
        "--tech",
        "figure4",
        "--props",
        "F1,F2,F3,F4,T1,T4,T5",
        "--samples",
        "50",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let polyhedral = ddfkit(&["check", "--tech", "polyhedral_b", "--props", "T4", "--samples", "50"]);
    assert_eq!(polyhedral.status.code(), Some(0));
}

#[test]
fn check_non_quadratic_exits_2() {
    let out = ddfkit(&["check", "--tech", "staircase"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("quadratic_separable"));
}

#[test]
fn reports_are_deterministic() {
    let run = || ddfkit(&["--json", "check", "--tech", "figure4", "--samples", "50", "--seed", "9"]);
    assert_eq!(stable(&run()), stable(&run()));
    let demo = || ddfkit(&["--json", "demo", "quadratic-homogeneity", "--seed", "3"]);
    assert_eq!(stable(&demo()), stable(&demo()));
}

#[test]
fn seed_from_environment() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_ddfkit"))
        .args(["--json", "check", "--tech", "figure4", "--samples", "20"])
        .env("DDFKIT_SEED", "17")
        .output()
        .unwrap();
    assert_eq!(json(&with_env)["seed"], 17);
    let explicit = ddfkit(&[
        "--json",
        "check",
        "--tech",
        "figure4",
        "--samples",
        "20",
        "--seed",
        "17",
    ]);
    assert_eq!(json(&with_env)["results"], json(&explicit)["results"]);
}

#[test]
fn demo_example_2_1_6() {
    let out = ddfkit(&["demo", "example-2-1-6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("(0.5,1) ∉ Eff P(1): true"), "{text}");
    assert!(text.contains("efficient JPF on grid: does not hold"), "{text}");
    assert!(text.contains("isoquant JPF on grid: holds"), "{text}");
}

#[test]
fn demo_example_2_1_9_and_staircase() {
    let out = ddfkit(&["demo", "example-2-1-9"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Lemma 2.1.10 witness: t(y1=0.5; i=2, x=(1,1)) = 1 = y2"));
    let out = ddfkit(&["demo", "staircase"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("1 ∈ Isoq P(2): true"));
    assert!(text.contains("2 ∉ Isoq L(1): true"));
    assert!(text.contains("isoquant JPF on grid: does not hold"));
}

#[test]
fn demo_quadratic_homogeneity() {
    let out = ddfkit(&["--json", "demo", "quadratic-homogeneity"]);
    assert_eq!(out.status.code(), Some(0));
    let w = &json(&out)["results"]["witness"];
    assert!(w["max_deviation"].as_f64().unwrap() > 1e-3);
    assert!(w["translation_residual"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn demo_figure_data_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = ddfkit(&["demo", "figure-data", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    for series in ["figure1", "figure2", "figure3", "figure4"] {
        assert!(
            dir.path().join(format!("figure-data_{series}.csv")).exists(),
            "{series}"
        );
    }
    let mut reader = csv::Reader::from_path(dir.path().join("figure-data_figure4.csv")).unwrap();
    assert_eq!(reader.headers().unwrap(), vec!["beta", "value"]);
    let root = 2.0 * 3f64.sqrt() - 3.0;
    let rows: Vec<(f64, f64)> = reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].parse().unwrap(), r[1].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.first().unwrap().0, -1.0);
    assert_eq!(rows.last().unwrap().0, 3.0);
    let at_root = rows.iter().find(|(b, _)| (b - root).abs() <= 1e-15).expect("root row");
    assert!(at_root.1.abs() <= 1e-9);
    let fig1 = csv::Reader::from_path(dir.path().join("figure-data_figure1.csv"))
        .unwrap()
        .headers()
        .unwrap()
        .clone();
    assert_eq!(fig1, vec!["y1", "y2"]);
}

#[test]
fn unknown_demo_exits_2() {
    assert_eq!(ddfkit(&["demo", "nope"]).status.code(), Some(2));
}
