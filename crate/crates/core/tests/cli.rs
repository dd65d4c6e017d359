use std::process::{Command, Output};

use serde_json::Value;

fn qkernel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkernel"))
        .args(args)
        .env_remove("QKERNEL_MAX_TERMS")
        .output()
        .expect("spawn qkernel")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("JSON line"))
        .collect()
}

#[test]
fn verify_one_identity() {
    let out = qkernel(&["verify", "pde.laguerre"]);
    assert_eq!(out.status.code(), Some(0));
    let v = lines(&out);
    let (summary, reports) = v.split_last().unwrap();
    assert_eq!(summary["failed"], 0);
    assert_eq!(summary["total"].as_u64().unwrap() as usize, reports.len());
    for rep in reports {
        assert_eq!(rep["identity_id"], "pde.laguerre");
        assert_eq!(rep["mode"], "exact");
        assert_eq!(rep["metric"], 0.0);
        assert_eq!(rep["passed"], true);
        assert_eq!(rep["seed"], 1729);
        assert!(rep["wall_time_ms"].is_null());
    }
}

#[test]
fn verify_generating_function_defaults() {
    let out = qkernel(&["verify", "gf.l1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = lines(&out);
    let rep = &v[0];
    assert!(rep["metric"].as_f64().unwrap() < 1e-10);
    assert_eq!(rep["truncation"]["N_lhs"], 60);
}

#[test]
fn tolerance_override_fails_float_checks() {
    let out = qkernel(&["verify", "gf.l1", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(qkernel(&["verify", "eq9.9"]).status.code(), Some(2));
    assert_eq!(
        qkernel(&["verify-all", "--filter", "nothing.*"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qkernel(&["verify", "eq2.2", "--mode", "fuzzy"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(qkernel(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(qkernel(&["--help"]).status.code(), Some(0));
    let bad = qkernel(&[
        "eval", "poly", "--family", "jacobi", "--n", "3", "--alpha", "4", "--beta", "1",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(!bad.stderr.is_empty());
}

#[test]
fn filtered_run_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("reports.jsonl");
    let out = qkernel(&[
        "verify-all",
        "--filter",
        "eq*",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let summary = lines(&out);
    assert_eq!(summary.len(), 1);
    let ids: Vec<_> = summary[0]["by_identity"]
        .as_object()
        .unwrap()
        .keys()
        .cloned()
        .collect();
    assert_eq!(ids, ["eq1.1", "eq1.3", "eq1.4a", "eq1.4b", "eq2.2"]);
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        written.lines().count() as u64,
        summary[0]["total"].as_u64().unwrap()
    );
}

#[test]
fn config_file_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"seed": 7, "tolerances": {"gf.l1": 0.0}}"#).unwrap();
    let out = qkernel(&["verify", "gf.l1", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(lines(&out)[0]["seed"], 7);

    let out = qkernel(&[
        "verify",
        "gf.l1",
        "--config",
        cfg.to_str().unwrap(),
        "--tol",
        "1e-10",
        "--seed",
        "9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out)[0]["seed"], 9);

    std::fs::write(&cfg, r#"{"sed": 7}"#).unwrap();
    let out = qkernel(&["verify", "gf.l1", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn timing_is_opt_in() {
    let out = qkernel(&["verify", "eq2.2", "--timing"]);
    assert!(lines(&out)[0]["wall_time_ms"].is_u64());
}

#[test]
fn reports_are_deterministic() {
    let a = qkernel(&["verify-all", "--filter", "expand.*", "--filter", "shift.*"]);
    let b = qkernel(&["verify-all", "--filter", "expand.*", "--filter", "shift.*"]);
    assert_eq!(a.stdout, b.stdout);
    let c = qkernel(&["verify-all", "--filter", "shift.*", "--seed", "11"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn eval_poly_coefficients() {
    let out = qkernel(&[
        "eval", "poly", "--family", "jacobi", "--n", "1", "--alpha", "2", "--beta", "3", "--q",
        "1/3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = &lines(&out)[0];
    // -(1 - alpha beta q^2)/(1 - alpha q) = -(1/3)/(1/3)
    assert_eq!(v["coeffs"], serde_json::json!(["1", "-1"]));

    let out = qkernel(&[
        "eval", "poly", "--family", "laguerre", "--n", "4", "--alpha", "1", "--mode", "float",
        "--x", "0", "--y", "2",
    ]);
    assert_eq!(lines(&out)[0]["value"], 16.0);
}

#[test]
fn eval_phi_and_genfun() {
    let out = qkernel(&["eval", "phi", "--upper", "1/4", "--z", "1/3"]);
    let v = &lines(&out)[0];
    let want = {
        let (mut num, mut den, mut qk) = (1.0, 1.0, 1.0);
        for _ in 0..80 {
            num *= 1.0 - qk / 12.0;
            den *= 1.0 - qk / 3.0;
            qk *= 0.5;
        }
        num / den
    };
    assert!((v["value"].as_f64().unwrap() - want).abs() < 1e-14);

    let out = qkernel(&[
        "eval", "phi", "--upper", "16", "--z", "3/5", "--q", "1/2", "--mode", "exact",
    ]);
    let v = &lines(&out)[0];
    assert_eq!(v["terminated"], true);
    assert!(v["note"].as_str().unwrap().contains("terminating"));

    let out = qkernel(&[
        "eval",
        "genfun-rhs",
        "l3",
        "--alpha",
        "0.3",
        "--x",
        "0",
        "--y",
        "0.7",
        "--t",
        "0.4",
    ]);
    let v = &lines(&out)[0];
    let ty = 0.28f64;
    let qa1 = 0.5f64.powf(1.3);
    let (mut num, mut den, mut qk) = (1.0, 1.0, 1.0);
    for _ in 0..80 {
        num *= 1.0 - qa1 * ty * qk;
        den *= 1.0 - ty * qk;
        qk *= 0.5;
    }
    assert!((v["value"].as_f64().unwrap() - num / den).abs() < 1e-14);
}

#[test]
fn expand_command() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    let out = qkernel(&[
        "eval", "poly", "--family", "laguerre", "--n", "2", "--alpha", "1",
    ]);
    let c = lines(&out)[0]["coeffs"].clone();
    let zero = Value::from("0");
    let grid = serde_json::json!({
        "rows": 3, "cols": 3,
        "entries": [[zero, zero, c[0]], [zero, c[1], zero], [c[2], zero, zero]],
    });
    std::fs::write(&good, grid.to_string()).unwrap();
    let out = qkernel(&[
        "expand",
        good.to_str().unwrap(),
        "--family",
        "laguerre",
        "--alpha",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = &lines(&out)[0];
    assert_eq!(v["admissible"], true);
    assert_eq!(v["coeffs"], serde_json::json!(["0", "0", "1"]));

    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"rows": 2, "cols": 2, "entries": [[0, 1], [1, 0]]}"#,
    )
    .unwrap();
    let out = qkernel(&[
        "expand",
        bad.to_str().unwrap(),
        "--family",
        "laguerre",
        "--alpha",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(lines(&out)[0]["admissible"], false);

    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, r#"{"rows": 0, "cols": 0, "entries": []}"#).unwrap();
    let out = qkernel(&[
        "expand",
        empty.to_str().unwrap(),
        "--family",
        "laguerre",
        "--alpha",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn max_terms_environment_variable() {
    let out = Command::new(env!("CARGO_BIN_EXE_qkernel"))
        .args(["eval", "phi", "--upper", "0.9", "--z", "0.95", "--q", "0.9"])
        .env("QKERNEL_MAX_TERMS", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("truncation"));

    let out = Command::new(env!("CARGO_BIN_EXE_qkernel"))
        .args(["eval", "phi", "--upper", "0.9", "--z", "0.95"])
        .env("QKERNEL_MAX_TERMS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
