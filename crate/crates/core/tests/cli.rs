use std::process::Command;

fn supercauchy(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_supercauchy"))
        .args(args)
        .env("SUPERCAUCHY_THREADS", "2")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn verify_writes_json_lines() {
    let (code, out, _) = supercauchy(&["verify", "superdim", "cnk", "kernel-monogenic"]);
    assert_eq!(code, 0);
    let reports: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(reports.len(), 3);
    for r in &reports {
        for key in ["check", "params", "status", "max_rel_error", "witness", "wall_time_ms"] {
            assert!(r.get(key).is_some(), "{key} missing in {r}");
        }
        assert_eq!(r["status"], "pass");
    }
}

#[test]
fn verify_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.jsonl");
    let (code, out, _) = supercauchy(&["verify", "fermionic-stokes", "--n", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let r: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(r["check"], "fermionic-stokes");
    assert_eq!(r["max_rel_error"], 0.0);
}

#[test]
fn numeric_check_from_cli() {
    let (code, out, _) = supercauchy(&["verify", "general-stokes", "--m", "1", "--n", "1", "--trials", "5"]);
    assert_eq!(code, 0);
    let r: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert!(r["max_rel_error"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn failing_check_exits_one() {
    let (code, out, _) = supercauchy(&["verify", "pompeiu", "--m", "3", "--resolution", "4", "--trials", "0"]);
    assert_eq!(code, 1, "{out}");
    let r: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(r["status"], "fail");
    assert!(r["witness"].is_object());
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = supercauchy(&["verify", "no-such-check"]);
    assert_eq!(code, 2);
    assert!(err.contains("superdim"));
    assert_eq!(supercauchy(&["verify", "pompeiu", "--m", "2"]).0, 2);
    assert_eq!(supercauchy(&["eval", "x1 +"]).0, 2);
}

#[test]
fn eval_and_kernel() {
    let (code, out, _) = supercauchy(&["eval", "(x1*e1 + q1*f1 + q2*f2)^2", "--m", "1", "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "q1*q2 - x1^2");
    let (code, out, _) = supercauchy(&["kernel", "nu2", "--m", "3", "--n", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("pi^-1"), "{out}");
}
