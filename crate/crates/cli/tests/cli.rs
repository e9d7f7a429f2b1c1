use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realzeros"))
        .args(args)
        .env_remove("REALZEROS_THREADS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn csv_rows(out: &Output) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    r.records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect()
}

fn without_wall_time(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_time_s");
    v
}

#[test]
fn eval_csv_over_a_grid() {
    let out = run(&["eval", "--fn", "xistar", "--x", "0:30:0.5", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 61);
    assert!(rows.iter().all(|r| r[4].parse::<f64>().unwrap() == 0.0));
    assert_eq!(rows[60][1], "30");
}

#[test]
fn eval_k_at_zero_order() {
    // K_0(1) by an independent trapezoid sum of int_0^inf exp(-cosh u) du.
    let h = 1e-3;
    let e = |u: f64| (-u.cosh()).exp();
    let oracle = h * (0.5 * e(0.0) + (1..20_000).map(|k| e(k as f64 * h)).sum::<f64>());
    let out = run(&["eval", "--fn", "k", "--a", "1", "--z", "0"]);
    assert_eq!(code(&out), 0);
    let v = json(&out)["results"][0]["re"].as_f64().unwrap();
    assert!((v - oracle).abs() <= 1e-12 * oracle, "{v} vs {oracle}");
}

#[test]
fn invalid_function_parameters() {
    let out = run(&[
        "eval", "--fn", "xigeneral", "--A", "1", "--B", "2", "--a", "3", "--b", "1", "--c", "2", "--x", "0",
    ]);
    assert_eq!(code(&out), 2);
    assert_eq!(code(&run(&["eval", "--fn", "k", "--x", "1"])), 2);
    assert_eq!(code(&run(&["eval", "--fn", "xistar", "--a", "1", "--x", "1"])), 2);
    assert_eq!(code(&run(&["eval", "--fn", "nope", "--x", "1"])), 2);
}

#[test]
fn kp_sweep_passes() {
    let out = run(&[
        "verify", "--identity", "kp", "--a", "1", "2pi", "--x", "0:10:1", "--y", "-2:2:0.5",
    ]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["schema"], "1");
    let rows = r["results"].as_array().unwrap();
    assert_eq!(rows.len(), 2 * 11 * 9);
    assert!(rows.iter().all(|row| row["pass"] == true && row["tol"] == 1e-8));
    assert_eq!(r["summary"]["pass"], rows.len());
    assert_eq!(r["summary"]["fail"], 0);
    assert_eq!(rows[0]["a"], 1.0);
    assert_eq!(rows[99]["a"], 2.0 * std::f64::consts::PI);
}

#[test]
fn verify_csv_columns() {
    let out = run(&[
        "verify", "--identity", "f3", "--a", "2pi", "--c", "2.25", "--x", "5", "--y", "0", "--format", "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.starts_with("identity,a,c,x,y,lhs,rhs,abs_residual,rel_residual,tol,pass\n"));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 1);
    let rel: f64 = rows[0][8].parse().unwrap();
    assert!(rel <= 1e-10);
    assert_eq!(rows[0][10], "true");
}

#[test]
fn mellin_contour_precondition() {
    let out = run(&[
        "verify", "--identity", "mellin", "--a", "1", "--x", "1", "--y", "0.5", "--cline", "-0.3",
    ]);
    assert_eq!(code(&out), 2);
    let ok = run(&[
        "verify", "--identity", "mellin", "--a", "1", "--x", "1", "--y", "0.5", "--cline", "-0.8",
    ]);
    assert_eq!(code(&ok), 0);
}

#[test]
fn derivative_identities_report_both_rows() {
    let out = run(&["verify", "--identity", "deriv", "--a", "1", "--x", "1", "--y", "0.7"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    let ids: Vec<_> = r["results"].as_array().unwrap().iter().map(|v| v["identity"].clone()).collect();
    assert_eq!(ids, ["deriv1", "deriv2"]);
    assert_eq!(r["results"][0]["signs_hold"], true);
}

#[test]
fn f_kernel_scan_is_clean() {
    let out = run(&["kernels", "--which", "f", "--t", "0.1:0.9:0.1", "--order", "40"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["results"][0];
    assert_eq!(r["status"], "clean");
    let min = r["min_even_coefficient"]["value"].as_f64().unwrap();
    assert!(min >= -1e-12);
}

#[test]
fn g_kernel_vanishes_without_shift() {
    let out = run(&["kernels", "--which", "g", "--c", "0", "--emit-coeffs"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    for table in r["details"]["coefficients"].as_array().unwrap() {
        assert!(table["coefficients"].as_array().unwrap().iter().all(|v| v == 0.0));
    }
}

#[test]
fn g_kernel_scan_minima() {
    let out = run(&[
        "kernels", "--which", "g", "--t", "0.1:0.9:0.1", "--c", "0.25", "0.5", "1", "2.25", "--order", "30",
        "--format", "csv",
    ]);
    assert_eq!(code(&out), 0);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 36);
    assert!(rows.iter().all(|r| r[4].parse::<f64>().unwrap() >= -1e-10));
}

#[test]
fn kernel_parameter_errors() {
    assert_eq!(code(&run(&["kernels", "--which", "f", "--t", "1.5"])), 2);
    assert_eq!(code(&run(&["kernels", "--which", "f", "--order", "100000"])), 2);
    assert_eq!(code(&run(&["kernels", "--which", "f", "--c", "1"])), 2);
}

#[test]
fn certify_k_and_f() {
    let out = run(&["zeros", "certify", "--fn", "k", "--a", "2pi", "--rect", "0", "20", "-2", "2"]);
    assert_eq!(code(&out), 0);
    let c = &json(&out)["results"][0];
    assert_eq!(c["certified"], true);
    assert_eq!(c["winding_count"], c["real_zeros_found"]);

    let out = run(&["zeros", "certify", "--fn", "f", "--a", "1", "--c", "2", "--rect", "0", "15", "-3", "3"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn certify_rejects_bad_rectangles() {
    assert_eq!(code(&run(&["zeros", "certify", "--fn", "xistar", "--rect", "0", "20", "0", "2"])), 2);
    assert_eq!(code(&run(&["zeros", "certify", "--fn", "xistar", "--rect", "5", "1", "-1", "1"])), 2);
}

#[test]
fn control_certificate_fails() {
    let out = run(&["zeros", "certify", "--fn", "control-z2p1", "--rect", "-2", "2", "-2", "2"]);
    assert_eq!(code(&out), 1);
    let c = &json(&out)["results"][0];
    assert_eq!(c["winding_count"], 2);
    assert_eq!(c["real_zeros_found"], 0);
}

#[test]
fn zero_on_the_boundary_is_a_numerical_failure() {
    // +-i lie on the horizontal edges and are sampled exactly.
    let out = run(&["zeros", "certify", "--fn", "control-z2p1", "--rect", "-1", "1", "-1", "1"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("boundary"));
}

#[test]
fn riemann_xi_scan() {
    let out = run(&["zeros", "scan", "--fn", "riemannxi", "--x", "10", "30", "--step", "0.05"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    let z: Vec<f64> = r["results"].as_array().unwrap().iter().map(|v| v["location"].as_f64().unwrap()).collect();
    // Ordinates of the first three nontrivial zeros of zeta.
    let known = [14.134725141734693, 21.022039638771555, 25.01085758014569];
    assert_eq!(z.len(), 3);
    for (a, b) in z.iter().zip(known) {
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }
    assert_eq!(r["summary"]["unjudged"], 3);
}

#[test]
fn jensen_scans() {
    let out = run(&["jensen", "--fn", "xistar", "--x", "0:30:0.5", "--y", "-3:3:0.25"]);
    assert_eq!(code(&out), 0);

    let out = run(&["jensen", "--fn", "control-z2p1", "--x", "-3:3:0.1", "--y", "-3:3:0.1"]);
    assert_eq!(code(&out), 1);
    let r = &json(&out)["results"][0];
    assert!(r["min_first"].as_f64().unwrap() < 0.0 || r["min_second"].as_f64().unwrap() < 0.0);

    let out = run(&["jensen", "--fn", "xistar", "--x", "0:10:0.5", "--y", "0"]);
    assert_eq!(json(&out)["results"][0]["min_first"], 0.0);
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "--identity", "xistar", "--x", "0:4:0.5", "--y", "-1", "1"];
    let a = without_wall_time(json(&run(&args)));
    let b = without_wall_time(json(&run(&args)));
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn config_file_mirrors_flags() {
    let dir = std::env::temp_dir().join(format!("realzeros-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.json");
    std::fs::write(
        &path,
        r#"{"command": "verify", "identity": "kp", "a": [1, "2pi"], "x": "0:2:1", "y": [-0.5, 0.5]}"#,
    )
    .unwrap();
    let from_file = run(&["--config", path.to_str().unwrap()]);
    let from_flags = run(&[
        "verify", "--identity", "kp", "--a", "1", "2pi", "--x", "0:2:1", "--y", "-0.5", "0.5",
    ]);
    assert_eq!(code(&from_file), 0);
    let (a, b) = (without_wall_time(json(&from_file)), without_wall_time(json(&from_flags)));
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["config"], b["config"]);

    let out_path = dir.join("report.csv");
    let written = run(&["--config", path.to_str().unwrap(), "--format", "csv", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&written), 0);
    assert!(written.stdout.is_empty());
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(text.lines().count(), 1 + 2 * 3 * 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn thread_count_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_realzeros"))
        .args(["eval", "--fn", "xistar", "--x", "0:3:1"])
        .env("REALZEROS_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let bad = Command::new(env!("CARGO_BIN_EXE_realzeros"))
        .args(["eval", "--fn", "xistar", "--x", "0"])
        .env("REALZEROS_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
}
