use std::process::Command;

use gcs_cli::Report;
use serde_json::Value;

fn gcs(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gcs")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8"),
        String::from_utf8(out.stderr).expect("utf8"),
    )
}

fn json(args: &[&str]) -> (i32, Report) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out, err) = gcs(&full);
    let report: Report = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}{err}"));
    assert!(report.is_well_formed());
    (code, report)
}

#[test]
fn construct_ghz_reports_zero_purity() {
    let (code, r) = json(&["construct", "ghz_n", "--n", "4"]);
    assert_eq!(code, 0);
    let purity = r.items[0].values["purity"].as_f64().unwrap();
    assert!(purity.abs() < 1e-9);
    assert_eq!(r.payload.as_ref().unwrap()["match"], "exact");
}

#[test]
fn construct_w2_has_balanced_coefficients() {
    let (code, r) = json(&["construct", "w_n", "--n", "2"]);
    assert_eq!(code, 0);
    let terms = r.payload.as_ref().unwrap()["computed"]["terms"].as_array().unwrap().clone();
    let mut kets: Vec<Value> = terms.iter().map(|t| t["ket"].clone()).collect();
    kets.sort_by_key(|k| k.to_string());
    assert_eq!(kets, vec![serde_json::json!([0, 1]), serde_json::json!([1, 0])]);
    for t in &terms {
        let c = &t["coeff"];
        let m = c[0].as_f64().unwrap().hypot(c[1].as_f64().unwrap());
        assert!((m - 0.5f64.sqrt()).abs() < 1e-12);
    }
}

#[test]
fn construct_unknown_id_is_a_usage_error() {
    let (code, out, err) = gcs(&["construct", "nosuch"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("nosuch"));
}

#[test]
fn construct_mismatch_exits_one_and_keeps_the_ledger_reference() {
    let (code, r) = json(&["construct", "qudit_mes_n", "--n", "4"]);
    assert_eq!(code, 1);
    assert_eq!(r.items[0].ledger, vec!["D-QUDIT-INDEX".to_string()]);
    assert_eq!(r.ledger[0].id, "D-QUDIT-INDEX");
}

#[test]
fn flagged_items_do_not_fail_the_run() {
    let (code, r) = json(&["construct", "bell_psi_pm", "--sign", "-1"]);
    assert_eq!(code, 0);
    assert_eq!(r.items[0].status, gcs_cli::Status::Flagged);
    assert!(!r.items[0].ledger.is_empty());
}

#[test]
fn verify_closure_reports_both_anchors() {
    let (code, r) = json(&["verify", "closure"]);
    assert_eq!(code, 0);
    let by_id = |id: &str| r.items.iter().find(|i| i.id == id).unwrap_or_else(|| panic!("{id}"));
    let lambda = &by_id("closure.su_q2.d3").values["lambda"];
    let q = num_complex::Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
    assert!((lambda[0].as_f64().unwrap() + 3.0 * q.re).abs() < 1e-12);
    assert!((lambda[1].as_f64().unwrap() + 3.0 * q.im).abs() < 1e-12);
    assert_eq!(by_id("closure.su_q2.d4").status, gcs_cli::Status::Pass);
    assert_eq!(by_id("closure.squeeze.d3.printed").ledger, vec!["D-SQUEEZE-CONSTANT".to_string()]);
}

#[test]
fn verify_algebra_at_one_grade() {
    let (code, r) = json(&["verify", "algebra", "--n", "5"]);
    assert_eq!(code, 0);
    for id in ["algebra.associativity", "algebra.nilpotency"] {
        let item = r.items.iter().find(|i| i.id == id).unwrap();
        assert_eq!(item.status, gcs_cli::Status::Pass);
        assert!(item.values["cases"].as_u64().unwrap() >= 256);
    }
}

#[test]
fn verify_unknown_suite_is_a_usage_error() {
    assert_eq!(gcs(&["verify", "everything"]).0, 2);
}

#[test]
fn bad_grade_is_a_usage_error() {
    assert_eq!(gcs(&["--n", "1", "verify", "algebra"]).0, 2);
}

#[test]
fn items_are_sorted_by_id() {
    let (_, r) = json(&["verify", "boson"]);
    let ids: Vec<&str> = r.items.iter().map(|i| i.id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn solve_weight_diagonal_target_has_diagonal_support() {
    let (code, r) =
        json(&["solve-weight", "--factors", "coherent:t1,coherent:t2", "--target", "diag", "--expect", "feasible"]);
    assert_eq!(code, 0);
    let sol = &r.payload.as_ref().unwrap()["solution"];
    for (m, c) in sol["basis"].as_array().unwrap().iter().zip(sol["coefficients"].as_array().unwrap()) {
        let e = |v: &str| m.get(v).and_then(Value::as_u64).unwrap_or(0);
        if e("t1") != e("t2") {
            assert!(c[0].as_f64().unwrap().hypot(c[1].as_f64().unwrap()) < 1e-9, "{m}");
        }
    }
}

#[test]
fn solve_weight_single_variable_swap_target_is_infeasible() {
    let (code, r) = json(&[
        "solve-weight",
        "--factors",
        "coherent:t1,coherent:t1",
        "--target",
        "0 2:1; 2 0:1",
        "--expect",
        "infeasible",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r.items[0].values["feasible"], false);
    // The same expectation reversed fails the run.
    let (code, _) = json(&[
        "solve-weight",
        "--factors",
        "coherent:t1,coherent:t1",
        "--target",
        "0 2:1; 2 0:1",
        "--expect",
        "feasible",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn solve_weight_random_target_round_trips() {
    for n in ["2", "3", "4"] {
        let (code, r) = json(&[
            "--n",
            n,
            "--seed",
            "7",
            "solve-weight",
            "--factors",
            "coherent:t1,coherent:t2",
            "--target",
            "random",
            "--expect",
            "feasible",
        ]);
        assert_eq!(code, 0, "n = {n}");
        assert!(r.items[0].values["residual"].as_f64().unwrap() < 1e-9);
    }
}

#[test]
fn solve_weight_reads_a_state_file() {
    let dir = std::env::temp_dir().join(format!("gcs-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("target.json");
    let h = 0.5f64.sqrt();
    let state = serde_json::json!({
        "grade_n": 3,
        "sites": [3, 3],
        "terms": [
            {"coeff": [h, 0.0], "monomial": {}, "ket": [0, 0]},
            {"coeff": [h, 0.0], "monomial": {}, "ket": [1, 1]},
        ],
    });
    std::fs::write(&path, state.to_string()).unwrap();
    let target = format!("@{}", path.display());
    let (code, r) = json(&[
        "solve-weight",
        "--factors",
        "coherent:t1,coherent:t2",
        "--target",
        &target,
        "--basis",
        "diag",
        "--expect",
        "feasible",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r.payload.as_ref().unwrap()["target"], state);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn malformed_specs_are_usage_errors() {
    for args in [
        ["solve-weight", "--factors", "laser:t1", "--target", "diag"],
        ["solve-weight", "--factors", "coherent:x9", "--target", "diag"],
        ["solve-weight", "--factors", "coherent:t1,coherent:t2", "--target", "0 7:1"],
        ["solve-weight", "--factors", "coherent:t1,coherent:t2", "--target", "@/nonexistent/state.json"],
    ] {
        let (code, _, err) = gcs(&args);
        assert!(code == 2 || (code == 1 && err.contains("io")), "{args:?}: {code} {err}");
    }
    let (code, _, _) =
        gcs(&["solve-weight", "--factors", "coherent:t1,coherent:t2", "--target", "diag", "--basis", "t1^3"]);
    assert_eq!(code, 2);
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("gcs-cli-out-{}.json", std::process::id()));
    let (code, out, _) = gcs(&["--format", "json", "--out", path.to_str().unwrap(), "closure"]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let r: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.command, vec!["--format", "json", "--out", path.to_str().unwrap(), "closure"]);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn text_format_lists_items_and_ledger() {
    let (code, out, _) = gcs(&["verify", "closure"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS    closure.su_q2.d3"));
    assert!(out.contains("FLAGGED closure.squeeze.d3.printed"));
    assert!(out.contains("ledger:"));
}
