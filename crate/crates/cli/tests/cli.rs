use std::process::Command;

use serde_json::Value;

fn jkm(args: &[&str]) -> (i32, Vec<Value>, String) {
    jkm_env(args, &[])
}

fn jkm_env(args: &[&str], env: &[(&str, &str)]) -> (i32, Vec<Value>, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_jkm"));
    cmd.args(args).env_remove("JKM_PREC");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines = if args.contains(&"table") {
        Vec::new()
    } else {
        stdout
            .lines()
            .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("bad line {l}: {e}")))
            .collect()
    };
    (out.status.code().unwrap(), lines, stdout)
}

fn status(v: &Value) -> &str {
    v["status"].as_str().unwrap()
}

#[test]
fn identity_k1_jmax40_gives_41_ok_lines() {
    let (code, lines, _) = jkm(&["identity", "--k", "1", "--jmax", "40"]);
    assert_eq!(code, 0);
    assert_eq!(lines.len(), 41);
    for (j, l) in lines.iter().enumerate() {
        assert_eq!(status(l), "ok");
        assert_eq!(l["command"], "identity");
        assert_eq!(l["params"]["j"], j as u64);
        assert!(l["elapsed_ms"].is_u64());
        assert!(l["data"].is_object());
    }
}

#[test]
fn mmp_k1_thresholds() {
    let (code, lines, _) = jkm(&["mmp", "--k", "1"]);
    assert_eq!(code, 0);
    let t = lines.iter().find(|l| l["params"]["check"] == "thresholds").unwrap();
    assert_eq!(t["data"]["thresholds"], serde_json::json!(["1/2", "5/8", "2/3"]));
}

#[test]
fn period_example_at_alpha_1e_minus_3() {
    let (code, lines, _) = jkm(&[
        "period", "--k", "1", "--alpha", "1e-3", "--prec", "256", "--tol", "1e-30",
    ]);
    assert_eq!(status(&lines[0]), "ok", "{}", lines[0]);
    assert_eq!(code, 0);
}

#[test]
fn period_inside_the_disk_agrees() {
    let (code, lines, _) = jkm(&["period", "--k", "1", "--alpha", "1e-9", "--tol", "1e-30"]);
    assert_eq!(code, 0);
    let agreement: f64 = lines[0]["data"]["agreement"].as_str().unwrap().parse().unwrap();
    assert!(agreement < 1e-30);
    let (code, lines, _) = jkm(&["period", "--k", "1", "--alpha", "1e-9,1e-10"]);
    assert_eq!(code, 0, "{}", lines[0]);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["identity", "--k", "0"],
        vec!["identity", "--k", "-3"],
        vec!["all", "--k", "0"],
        vec!["ifun", "--bogus"],
        vec!["frobnicate"],
        vec!["period", "--k", "1"],
        vec!["period", "--k", "1", "--alpha", "abc"],
        vec!["count", "--k", "1"],
        vec!["fiber-check", "--a", "0"],
        vec!["ode", "--prec", "8"],
        vec!["ode", "--tol", "-1"],
        vec!["count", "--q", "7", "--target", "Z"],
    ] {
        let (code, lines, _) = jkm(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(lines.is_empty(), "{args:?}");
    }
}

#[test]
fn failures_and_runtime_errors_exit_1() {
    let (code, lines, _) = jkm(&["roots", "--k", "1", "--alpha", "1e-6"]);
    assert_eq!((code, status(&lines[0])), (1, "fail"));
    let (code, lines, _) = jkm(&["count", "--k", "1", "--q", "9"]);
    assert_eq!((code, status(&lines[0])), (1, "error"));
}

#[test]
fn negative_controls_report_ok() {
    let (code, lines, _) = jkm(&["conic-check", "--k", "2", "--seed", "3"]);
    assert_eq!(code, 0);
    let checks: Vec<&str> = lines.iter().map(|l| l["params"]["check"].as_str().unwrap()).collect();
    assert_eq!(checks, ["newy", "newy-control", "conic", "conic-control"]);
    assert_eq!(lines[1]["data"]["holds"], false);
    assert_eq!(lines[3]["data"]["holds"], false);
}

#[test]
fn count_compares_methods() {
    for m in ["char", "brute"] {
        let (code, lines, _) = jkm(&["count", "--k", "2", "--q", "5", "--alpha", "2", "--method", m]);
        assert_eq!(code, 0);
        assert_eq!(lines[0]["data"]["char"], lines[0]["data"]["brute"]);
    }
    let (code, lines, _) = jkm(&["count", "--k", "1", "--q", "101", "--alpha", "3", "--target", "Y"]);
    assert_eq!(code, 0);
    assert_eq!(lines[0]["data"]["weil_ok"], true);
}

fn payloads(lines: &[Value]) -> Vec<String> {
    lines
        .iter()
        .map(|l| format!("{} {} {} {}", l["command"], l["params"], l["status"], l["data"]))
        .collect()
}

#[test]
fn identical_invocations_give_identical_payloads() {
    for args in [
        vec!["fiber-check", "--k", "1", "--seed", "11"],
        vec!["lines-check", "--k", "2", "--seed", "5", "--a", "3/2"],
        vec!["conic-check", "--k", "1", "--seed", "4"],
        vec!["relations-check", "--k", "2"],
    ] {
        let (_, a, _) = jkm(&args);
        let (_, b, _) = jkm(&args);
        assert_eq!(payloads(&a), payloads(&b), "{args:?}");
    }
    let (_, a, _) = jkm(&["fiber-check", "--seed", "1"]);
    let (_, b, _) = jkm(&["fiber-check", "--seed", "2"]);
    assert_ne!(payloads(&a), payloads(&b));
}

#[test]
fn precision_from_environment() {
    let (code, lines, _) = jkm_env(&["roots", "--k", "1", "--alpha", "1e-12"], &[("JKM_PREC", "128")]);
    assert_eq!(code, 0);
    assert_eq!(lines[0]["params"]["prec"], 128);
    let (_, lines, _) = jkm_env(
        &["roots", "--k", "1", "--alpha", "1e-12", "--prec", "192"],
        &[("JKM_PREC", "128")],
    );
    assert_eq!(lines[0]["params"]["prec"], 192);
}

#[test]
fn table_format() {
    let (code, _, out) = jkm(&["bcm", "--k", "2", "--format", "table"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].starts_with("command"));
    assert!(rows[1..].iter().all(|r| r.starts_with("bcm") && r.contains(" ok ")));
}

#[test]
fn all_with_kmax_1_passes() {
    let (code, lines, _) = jkm(&["all", "--k", "1"]);
    let bad: Vec<&Value> = lines.iter().filter(|l| status(l) != "ok").collect();
    assert!(bad.is_empty(), "{bad:#?}");
    assert_eq!(code, 0);
}

#[test]
fn all_summary_matrix_and_order() {
    let (code, lines, _) = jkm(&["all", "--k", "2"]);
    let last = lines.last().unwrap();
    assert_eq!(last["command"], "all");
    let matrix = last["data"]["matrix"].as_object().unwrap();
    assert_eq!(matrix.len(), jkm::suite::ROWS.len());
    for row in jkm::suite::ROWS {
        assert!(matrix.contains_key(row), "{row}");
    }
    for row in [
        "01-coefficient-identity",
        "02-period-supplementary",
        "06-roots-supplementary",
        "11-toric",
    ] {
        assert_eq!(matrix[row]["k=1"], "ok", "{row}");
        assert_eq!(matrix[row]["k=2"], "ok", "{row}");
    }
    let worst_fail = lines[..lines.len() - 1]
        .iter()
        .any(|l| matches!(status(l), "fail" | "error"));
    assert_eq!(code, i32::from(worst_fail));
    let ks: Vec<u64> = lines[..lines.len() - 1]
        .iter()
        .map(|l| l["params"]["k"].as_u64().unwrap())
        .collect();
    assert!(ks.windows(2).all(|w| w[0] <= w[1]));
    let (_, again, _) = jkm(&["all", "--k", "2"]);
    assert_eq!(payloads(&lines), payloads(&again));
}

#[test]
fn tiny_budget_marks_skipped() {
    let (code, lines, _) = jkm(&["all", "--k", "3", "--budget-seconds", "0"]);
    let (summary, checks) = lines.split_last().unwrap();
    assert_eq!(summary["command"], "all");
    let skipped: Vec<&Value> = checks.iter().filter(|l| status(l) == "skipped").collect();
    assert!(!skipped.is_empty());
    assert!(skipped.iter().all(|l| l["data"]["reason"] == "budget exceeded"));
    let failed = lines.iter().any(|l| matches!(status(l), "fail" | "error"));
    assert_eq!(code, i32::from(failed));
}
