//! Drives the `conecrit` binary end to end.

use std::process::{Command, Output};

use serde_json::Value;

fn conecrit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conecrit")).args(args).env("NO_COLOR", "1").output().expect("binary runs")
}

fn record(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(text.lines().nth(1).expect("json line")).expect("valid json")
}

#[test]
fn classify_verdicts_map_to_exit_codes() {
    let base = ["classify", "--N", "3", "--A", "0", "--B", "0", "--C", "1", "--sigma", "0", "--cone", "full", "--p"];
    let run = |p: &str| {
        let mut a = base.to_vec();
        a.push(p);
        conecrit(&a)
    };
    let at_three = run("3");
    assert_eq!(at_three.status.code(), Some(10));
    let rec = record(&at_three);
    assert_eq!(rec["verdict"], "NoPositiveSupersolutions");
    assert_eq!(rec["justification"], "subcritical-line");
    assert_eq!(run("3.5").status.code(), Some(0));
    let linear = conecrit(&["classify", "--p", "1", "--sigma", "2", "--B", "0", "--C", "0.1", "--N", "3"]);
    assert_eq!(linear.status.code(), Some(0));
}

#[test]
fn negative_values_parse_as_flags_values() {
    let out = conecrit(&["classify", "--N", "3", "--A", "-1", "--p", "-2", "--sigma", "-3"]);
    assert!(out.status.code().is_some_and(|c| c == 0 || c == 10), "{out:?}");
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(conecrit(&["classify", "--p", "x"]).status.code(), Some(2));
    assert_eq!(conecrit(&["classify", "--C", "-1"]).status.code(), Some(2));
    assert_eq!(conecrit(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# exterior ball, N = 3\nN = 3\nA = 0\nB = 0\nsigma = 0\np = 2.5\ncone = full\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    assert_eq!(conecrit(&["classify", "--config", cfg]).status.code(), Some(10));
    assert_eq!(conecrit(&["classify", "--config", cfg, "--p", "3.5"]).status.code(), Some(0));

    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "N = 3\ncolour = blue\n").unwrap();
    let out = conecrit(&["classify", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown key"));
}

#[test]
fn region_outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let csv1 = dir.path().join("a.csv");
    let csv2 = dir.path().join("b.csv");
    let svg = dir.path().join("a.svg");
    for csv in [&csv1, &csv2] {
        let out = conecrit(&[
            "region", "--preset", "a", "--p-steps", "2", "--sigma-steps", "2", "--csv", csv.to_str().unwrap(), "--svg", svg.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let a = std::fs::read(&csv1).unwrap();
    assert_eq!(a, std::fs::read(&csv2).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("p,sigma,verdict,justification,Lambda,branch\n"));
    assert_eq!(text.lines().count(), 5);
    let svg = std::fs::read_to_string(&svg).unwrap();
    assert!(svg.contains("data-role=\"kink\""));
}

#[test]
fn region_write_failure_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("x.csv");
    let out = conecrit(&["region", "--preset", "b", "--p-steps", "2", "--sigma-steps", "2", "--csv", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn eigen_on_quarter_arc() {
    let out = conecrit(&["eigen", "--N", "2", "--arc", "1.5707963"]);
    assert_eq!(out.status.code(), Some(0));
    let l = record(&out)["lambdas"][0].as_f64().unwrap();
    assert!((l - 4.0).abs() < 1e-6, "{l}");
}

#[test]
fn verify_barrier_pass_and_negative_control() {
    let ok = conecrit(&["verify-barrier", "--N", "3", "--p", "3.5", "--sigma", "0"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(record(&ok)["report"]["min_residual"].as_f64().unwrap() >= -1e-8);
    let bad = conecrit(&["verify-barrier", "--N", "3", "--p", "3.5", "--sigma", "0", "--alpha", "0.1"]);
    assert_eq!(bad.status.code(), Some(10));
    let outside = conecrit(&["verify-barrier", "--N", "3", "--p", "2", "--sigma", "0"]);
    assert_eq!(outside.status.code(), Some(2));
}

#[test]
fn hardy_sweep_reports_rate() {
    let out = conecrit(&["hardy-sweep", "--eps", "0.35"]);
    assert_eq!(out.status.code(), Some(0));
    let rate = record(&out)["report"]["divergence_rate"].as_f64().unwrap();
    assert!((rate - 0.10).abs() < 0.005);
    let sup = conecrit(&["hardy-sweep", "--mu-excess", "0.1", "--radii", "1e3,1e6,1e9,1e12"]);
    assert_eq!(sup.status.code(), Some(0));
}

#[test]
fn asymptotics_check_passes_on_quarter_arc() {
    let out = conecrit(&["asymptotics-check", "--critical"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(record(&out)["critical"], true);
}

#[test]
fn no_color_disables_escapes() {
    let out = conecrit(&["classify", "--p", "3.5"]);
    assert!(!out.stdout.contains(&0x1b));
}
