//! Black-box tests of the `hankel-lab` binary: exit codes, output
//! formats, and the documented subcommand contracts.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankel-lab"))
        .args(args)
        .output()
        .expect("spawn hankel-lab")
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankel-lab"))
        .args(args)
        .env(key, value)
        .output()
        .expect("spawn hankel-lab")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json_value(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_str(out)).expect("valid JSON on stdout")
}

#[test]
fn domain_errors_exit_with_usage_code() {
    assert_eq!(
        exit_code(&run(&["bound", "--alpha", "1.5", "--gamma", "0.5"])),
        2
    );
    assert_eq!(
        exit_code(&run(&["bound", "--alpha", "0.3", "--gamma", "0.0"])),
        2
    );
    assert_eq!(
        exit_code(&run(&[
            "coeffs", "--alpha", "0.3", "--gamma", "0.4", "--c", "1,2"
        ])),
        2
    );
    assert_eq!(exit_code(&run(&["phi", "--step", "0.5"])), 2);
    assert_eq!(
        exit_code(&run(&["scan", "--alpha", "0.5:0.7:0.05", "--gamma", "max"])),
        2
    );
}

#[test]
fn inadmissible_coefficients_exit_with_constraint_code() {
    let out = run(&[
        "coeffs",
        "--alpha",
        "0.3",
        "--gamma",
        "0.4",
        "--c",
        "0.9,0.5,0",
    ]);
    assert_eq!(exit_code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("constraint"));
}

#[test]
fn bound_reports_the_worked_example() {
    let out = run(&["--json", "bound", "--alpha", "0.2", "--gamma", "0.62"]);
    assert_eq!(exit_code(&out), 0);
    let v = json_value(&out);
    assert_eq!(v["in_region"], true);
    assert!((v["bound"].as_f64().unwrap() - 0.4745679012345679).abs() < 1e-15);
    // gamma sits exactly on the region ceiling, so A vanishes exactly.
    assert_eq!(v["A"].as_f64().unwrap(), 0.0);
    assert_eq!(v["ineq30"], true);
}

#[test]
fn coeffs_agrees_between_formula_and_solver() {
    let out = run(&[
        "--json", "coeffs", "--alpha", "0.3", "--gamma", "0.4", "--c", "0,1,0",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = json_value(&out);
    // Coefficients serialize as [re, im] pairs.
    let a3 = v["closed_form"]["a3"][0].as_f64().unwrap();
    assert!((a3 - 0.47058823529411764).abs() < 1e-12);
    assert_eq!(v["max_discrepancy"].as_f64().unwrap(), 0.0);
    let h22_abs = v["h22_abs"].as_f64().unwrap();
    let bound = v["bound"].as_f64().unwrap();
    assert!((h22_abs - bound).abs() < 1e-15);
}

#[test]
fn scan_emits_the_documented_csv_shape() {
    let out = run(&["scan", "--alpha", "0.05:0.55:0.05", "--gamma", "max"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "alpha,gamma,in_region,bound,attained,gap,A,B,nu1,ineq30"
    );
    assert_eq!(lines.len(), 12, "header plus eleven alpha rows");
    for row in &lines[1..] {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 10);
        assert_eq!(fields[2], "true", "every max-gamma row is in-region");
        assert_eq!(
            fields[9], "true",
            "the strict inequality holds on every row"
        );
        // Without --search the attained/gap columns stay empty.
        assert!(fields[4].is_empty() && fields[5].is_empty());
    }
}

#[test]
fn scan_with_search_fills_attainment_columns() {
    let out = run(&[
        "scan",
        "--alpha",
        "0.2:0.3:0.05",
        "--gamma",
        "0.4",
        "--search",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    for row in text.lines().skip(1) {
        let fields: Vec<&str> = row.split(',').collect();
        let bound: f64 = fields[3].parse().unwrap();
        let attained: f64 = fields[4].parse().unwrap();
        let gap: f64 = fields[5].parse().unwrap();
        assert!((bound - attained - gap).abs() < 1e-15);
        assert!(gap.abs() < 1e-6, "search reaches the ceiling in-region");
    }
}

#[test]
fn search_json_carries_the_full_report() {
    let out = run(&[
        "search",
        "--alpha",
        "0.2",
        "--gamma",
        "0.62",
        "--restarts",
        "6",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = json_value(&out);
    for key in [
        "best_schur",
        "best_coeffs",
        "best_triple",
        "attained",
        "theoretical",
        "gap",
        "in_region",
        "iterations_used",
        "restarts_converged",
        "exploratory",
    ] {
        assert!(v.get(key).is_some(), "missing key {key}");
    }
    assert_eq!(v["in_region"], true);
    assert_eq!(v["exploratory"], false);
    assert!(v["gap"].as_f64().unwrap().abs() < 1e-8);
}

#[test]
fn search_outside_the_region_is_flagged_exploratory() {
    let out = run(&[
        "search",
        "--alpha",
        "0.2",
        "--gamma",
        "0.9",
        "--restarts",
        "6",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v = json_value(&out);
    assert_eq!(v["in_region"], false);
    assert_eq!(v["exploratory"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("exploratory"));
}

#[test]
fn selftest_passes_clean_and_fails_under_injected_fault() {
    let clean = run(&["selftest"]);
    assert_eq!(exit_code(&clean), 0);
    let text = stdout_str(&clean);
    assert_eq!(text.lines().count(), 9, "one line per suite");
    assert!(text.lines().all(|l| l.contains("PASS")));

    let faulty = run_with_env(&["selftest"], "HANKEL_LAB_FAULT", "perturb-closed-form-a3");
    assert_eq!(exit_code(&faulty), 1);
    let text = stdout_str(&faulty);
    let failed: Vec<&str> = text.lines().filter(|l| l.contains("FAIL")).collect();
    assert_eq!(failed.len(), 1, "exactly the perturbed oracle suite fails");
    assert!(failed[0].contains("oracle-equivalence"));

    let unknown = run_with_env(&["selftest"], "HANKEL_LAB_FAULT", "no-such-fault");
    assert_eq!(exit_code(&unknown), 2);
}

#[test]
fn thread_count_does_not_change_search_output() {
    let single = run_with_env(
        &[
            "search",
            "--alpha",
            "0.25",
            "--gamma",
            "0.3",
            "--restarts",
            "8",
        ],
        "HANKEL_LAB_THREADS",
        "1",
    );
    let quad = run_with_env(
        &[
            "search",
            "--alpha",
            "0.25",
            "--gamma",
            "0.3",
            "--restarts",
            "8",
        ],
        "HANKEL_LAB_THREADS",
        "4",
    );
    assert_eq!(exit_code(&single), 0);
    assert_eq!(exit_code(&quad), 0);
    assert_eq!(single.stdout, quad.stdout);
}
