//! End-to-end tests of the binary: wire formats, exit codes, determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tetraphase"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], stdin: &str) -> Output {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_tetraphase"))
        .args(args)
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary finishes")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn tetra_regular_values() {
    let v = stdout_json(&run(&["tetra", "--edges", "1,1,1,1,1,1"]));
    let volume = v["volume"].as_f64().unwrap();
    assert!((volume - 0.11785113019775793).abs() < 1e-12);
    let psi_expected = (-1.0f64 / 3.0).acos();
    for p in v["psi"].as_array().unwrap() {
        assert!((p.as_f64().unwrap() - psi_expected).abs() < 1e-12);
    }
    assert!((v["pr_phase"].as_f64().unwrap() - 6.0 * psi_expected).abs() < 1e-11);
}

#[test]
fn tetra_exit_codes() {
    // Domain error: no tetrahedron.
    let out = run(&["tetra", "--edges", "1,1,1,1,1,10"]);
    assert_eq!(out.status.code(), Some(2));
    // Usage error: malformed flag value.
    let out = run(&["tetra", "--edges", "1,1,1"]);
    assert_eq!(out.status.code(), Some(1));
    // Unknown subcommand.
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn schlafli_residual_small_and_exit_zero() {
    let out = run(&["schlafli", "--edges", "1,1,1,1,1,1"]);
    let v = stdout_json(&out);
    assert!(v["schlafli_residual"].as_f64().unwrap() <= 1e-6);
    assert!(v["euler_residual"].as_f64().unwrap() <= 1e-6);
    assert!(v["genfun_residual"].as_f64().unwrap() <= 1e-6);
}

#[test]
fn sixj_exact_text_output() {
    // Bare exact value is the default output.
    let out = run(&["sixj", "--j", "1,1,1,1,1,1", "--exact"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1/6");

    let v = stdout_json(&run(&["sixj", "--j", "1,1,1,0,1,1", "--exact", "--format", "json"]));
    assert_eq!(v["exact"].as_str().unwrap(), "-1/3");
}

#[test]
fn sixj_sweep_csv_columns() {
    let out = run(&["sixj", "--j", "1,1,1,1,1,1", "--sweep", "2:4"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "k,exact,asym,abs_err,rel_err_vs_amplitude"
    );
    assert_eq!(lines.count(), 3);
}

#[test]
fn contour_report_closes() {
    let v = stdout_json(&run(&[
        "contour", "--edges", "1,1,1,1,1,1", "--samples", "4000",
    ]));
    assert!(v["closure_error"].as_f64().unwrap() <= 1e-10);
    let leg3 = v["actions"][2][0].as_f64().unwrap();
    let two_s = 2.0 * v["pr_phase"].as_f64().unwrap();
    assert!((leg3 - two_s).abs() <= 1e-5);
}

#[test]
fn stokes_stdin_and_reduce_roundtrip() {
    let spec = r#"{"base":[1,1,1,1,1,1],"direction":[1,1,1,1,1,1],"lambda0":0.0,"lambda1":0.5,"n":40}"#;
    let out = run_stdin(&["stokes", "--sweep-spec", "-", "--format", "json"], spec);
    let v = stdout_json(&out);
    assert!(v["mismatch"].as_f64().unwrap() <= 1e-9);

    // contour --dump-config | reduce
    let dump = run(&["contour", "--edges", "1,1,1,1,1,1", "--dump-config", "pprime"]);
    assert!(dump.status.success());
    let config = String::from_utf8_lossy(&dump.stdout).to_string();
    let reduced = stdout_json(&run_stdin(&["reduce", "--config", "-"], &config));
    let points = reduced["points"].as_array().unwrap();
    assert_eq!(points.len(), 6);
    let expected_tau = -2.0 * (-1.0f64 / 3.0).acos();
    for p in points {
        assert_eq!(p["membership"].as_str().unwrap(), "Lower");
        assert!((p["cylinder"]["tau"].as_f64().unwrap() - expected_tau).abs() < 1e-10);
    }
}

#[test]
fn character_csv_shape() {
    let out = run(&["character", "--max-two-j", "1", "--grid", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "two_j,phi,chi");
    assert_eq!(lines.len(), 1 + 2 * 4);
}

#[test]
fn deterministic_output_for_fixed_seed() {
    let a = run(&["qgroup", "verify-coproduct", "--samples", "50", "--seed", "11"]);
    let b = run(&["qgroup", "verify-coproduct", "--samples", "50", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["qgroup", "verify-coproduct", "--samples", "50", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn acceptance_subset_runs() {
    let out = run(&["acceptance", "--only", "8,11"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 2);
    assert!(text.contains("criterion-08"));
    assert!(text.contains("PASS"));
}
