use std::process::{Command, Output};

use serde_json::Value;

fn nccoulomb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nccoulomb")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = nccoulomb(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn spectrum_ground_state() {
    let v = json(&["spectrum", "--lambda", "0.2", "--alpha", "1", "--count", "3"]);
    assert_eq!(v["config"]["command"], "spectrum");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][0], "I");
    let e = rows[0][3].as_f64().unwrap();
    assert!((e + 0.49509757).abs() < 5e-9, "{e}");
    assert_eq!(rows[0][6].as_f64().unwrap(), -0.5);
}

#[test]
fn repulsive_spectrum_lies_above_the_band() {
    let v = json(&["spectrum", "--lambda", "0.5", "--alpha", "-1", "--count", "2"]);
    for row in v["rows"].as_array().unwrap() {
        assert_eq!(row[0], "II");
        assert!(row[3].as_f64().unwrap() > 8.0);
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["spectrum", "--lambda", "0.5", "--alpha", "0"][..],
        &["spectrum", "--lambda", "-1", "--alpha", "1"],
        &["smatrix", "--lambda", "0.5", "--alpha", "1", "--emin", "-1", "--emax", "1"],
        &["smatrix", "--lambda", "0.5", "--alpha", "1", "--emin", "1", "--emax", "9"],
        &["--precision", "extended", "spectrum", "--lambda", "1", "--alpha", "1"],
        &["--precision", "rational", "verify", "--suite", "smatrix"],
        &["verify", "--suite", "nonsense"],
        &["spectrum", "--lambda", "1"],
    ] {
        let out = nccoulomb(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["smatrix", "--lambda", "0.3", "--alpha", "1", "--j", "1", "--count", "40"];
    let first = nccoulomb(&args);
    let second = nccoulomb(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn csv_is_self_describing() {
    let out = nccoulomb(&["spectrum", "--lambda", "0.5", "--alpha", "1"]);
    let text = stdout(&out);
    let header: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).take(1).collect();
    assert_eq!(header, ["branch,n,j,E [energy],kappa [dimensionless],omega [dimensionless],E_commutative [energy],delta_E [energy]"]);
    assert!(text.contains("# lambda = 0.5\n"));
    assert!(text.contains("# units: hbar = m = 1\n"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 4);
}

#[test]
fn smatrix_is_unitary_and_symmetric() {
    let v = json(&["smatrix", "--lambda", "0.5", "--alpha", "1", "--j", "2", "--count", "21"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 21);
    for row in rows {
        assert!((row[5].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }
    // E -> 2/lambda^2 - E leaves p, hence S, unchanged.
    for i in 0..21 {
        let (a, b) = (&rows[i], &rows[20 - i]);
        assert!((a[1].as_f64().unwrap() - b[1].as_f64().unwrap()).abs() < 1e-12);
        assert!((a[3].as_f64().unwrap() - b[3].as_f64().unwrap()).abs() < 1e-10);
    }
    assert_eq!(rows[0][2], "upper");
    assert_eq!(rows[20][2], "lower");
    assert!(v["residuals"]["max_unitarity_defect"].as_f64().unwrap() < 1e-12);
}

#[test]
fn log_grid_endpoints() {
    let v = json(&["smatrix", "--lambda", "1", "--alpha", "1", "--emin", "0.01", "--emax", "1", "--count", "3", "--spacing", "log"]);
    let e: Vec<f64> = v["rows"].as_array().unwrap().iter().map(|r| r[0].as_f64().unwrap()).collect();
    assert!((e[0] - 0.01).abs() < 1e-15 && (e[1] - 0.1).abs() < 1e-15 && (e[2] - 1.0).abs() < 1e-15);
}

#[test]
fn bound_wavefunction_is_normalizable() {
    let v = json(&["wavefn", "--lambda", "0.5", "--alpha", "1", "--j", "1", "--bound", "3", "--n-max", "200"]);
    assert_eq!(v["config"]["provenance"], "bound_state_i");
    assert_eq!(v["rows"].as_array().unwrap().len(), 201);
    assert_eq!(v["residuals"]["norm_converged"], true);
    assert_eq!(v["rows"][0][2].as_f64().unwrap(), 1.0);
}

#[test]
fn rational_wavefunction_is_exact() {
    let v = json(&["--precision", "rational", "wavefn", "--lambda", "1", "--alpha", "3/7", "--energy", "25/8", "--n-max", "2"]);
    let exact: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r[2].as_str().unwrap()).collect();
    assert_eq!(exact, ["1", "-143/56", "5983/784"]);
    let float = json(&["wavefn", "--lambda", "1", "--alpha", "0.42857142857142855", "--energy", "3.125", "--n-max", "2"]);
    let r1 = float["rows"][1][2].as_f64().unwrap();
    assert!((r1 + 143.0 / 56.0).abs() < 1e-13);
}

#[test]
fn output_file_and_verify_suite() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("appendix_c.json");
    let out = nccoulomb(&["verify", "--suite", "appendixC", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r[0] == "appendixC" && r[3] == true));
    assert_eq!(v["residuals"]["failed"], 0);
}

#[test]
fn rational_verify_runs_exact_suites_only() {
    let out = nccoulomb(&["--precision", "rational", "verify", "--suite", "mirror", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    for row in v["rows"].as_array().unwrap() {
        assert_eq!(row[4].as_f64().unwrap(), 0.0);
    }
}

#[test]
fn selfenergy_report() {
    let v = json(&["selfenergy", "--n-max", "2000"]);
    let get = |name: &str| {
        v["rows"].as_array().unwrap().iter().find(|r| r[0] == name).unwrap()[1].as_f64().unwrap()
    };
    assert!(get("relative_gap") < 1e-3);
    assert!((get("lambda0") / 1.06e-15 - 1.0).abs() < 0.01);
}

#[test]
fn missing_constants_file_is_a_config_error() {
    let out = nccoulomb(&["selfenergy", "--constants", "/nonexistent/constants.txt"]);
    assert_eq!(out.status.code(), Some(2));
}
