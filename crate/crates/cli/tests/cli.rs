use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fiberspec(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fiberspec"))
        .args(args)
        .arg("--out")
        .arg(dir.join("out"))
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn lambda_examples() {
    let d = tempfile::tempdir().unwrap();
    let o = fiberspec(d.path(), &["lambda", "--m", "0", "--b", "1.0"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert!((v["lambda"].as_f64().unwrap() - 0.25).abs() <= 1e-12);
    assert_eq!(v["converged"], true);
    for key in ["m", "b", "lambda", "n_used", "residual", "converged"] {
        assert!(v.get(key).is_some(), "{key}");
    }

    let o = fiberspec(d.path(), &["lambda", "--m", "1", "--b", "0"]);
    assert_eq!(code(&o), 0);
    assert!((stdout_json(&o)["lambda"].as_f64().unwrap() - 2.0).abs() <= 1e-10);

    let o = fiberspec(d.path(), &["lambda", "--m", "-1", "--b", "1.9"]);
    assert_eq!(code(&o), 0);

    let o = fiberspec(d.path(), &["lambda", "--m", "1"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn lambda_unconverged_exits_two() {
    let d = tempfile::tempdir().unwrap();
    let o = fiberspec(
        d.path(),
        &["lambda", "--m", "1", "--b", "2.5", "--basis", "legendre", "--n-initial", "8", "--n-max", "32"],
    );
    assert_eq!(code(&o), 2);
    assert_eq!(stdout_json(&o)["converged"], false);
}

#[test]
fn sweep_small_grid() {
    let d = tempfile::tempdir().unwrap();
    let o = fiberspec(d.path(), &["sweep", "--b", "0:1:0.5", "--m", "0"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(d.path().join("out/sweep.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("b,m,lambda,converged,n_used,residual"));
    let lambdas: Vec<f64> = lines.map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert_eq!(lambdas.len(), 3);
    for (l, e) in lambdas.iter().zip([0.0, 0.0625, 0.25]) {
        assert!((l - e).abs() <= 1e-12);
    }
    let eff = fs::read_to_string(d.path().join("out/effective.csv")).unwrap();
    assert!(eff.starts_with("b,e_value,argmin_m\n"));
    assert!(!d.path().join("out/sweep.svg").exists());
}

#[test]
fn sweep_figure_grid_with_svg() {
    let d = tempfile::tempdir().unwrap();
    let o = fiberspec(d.path(), &["sweep", "--b", "0:2.5:0.05", "--m", "-2:4", "--svg"]);
    assert_eq!(code(&o), 0);
    let csv = fs::read_to_string(d.path().join("out/sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 51 * 7);
    let svg = fs::read_to_string(d.path().join("out/sweep.svg")).unwrap();
    assert!(svg.contains(r#"viewBox="0 0 800 600""#));
    assert_eq!(svg.matches("<polyline").count(), 7);
    for line in svg.lines().filter(|l| l.starts_with("<polyline")) {
        let m: i64 = line.split("data-m=\"").nth(1).unwrap().split('"').next().unwrap().parse().unwrap();
        let dashed = line.contains("stroke-dasharray");
        match m {
            0 | 1 => assert!(!dashed),
            m if m >= 2 => assert!(line.contains(r#"stroke-dasharray="2,4""#)),
            _ => assert!(line.contains(r#"stroke-dasharray="8,5""#)),
        }
    }
    let eff = fs::read_to_string(d.path().join("out/effective.csv")).unwrap();
    let argmins: Vec<i64> = eff.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    let switches = argmins.windows(2).filter(|w| w[0] != w[1]).count();
    assert_eq!(switches, 1);
}

#[test]
fn sweep_rejects_reversed_range() {
    let d = tempfile::tempdir().unwrap();
    let o = fiberspec(d.path(), &["sweep", "--b", "2:1:0.5", "--m", "0"]);
    assert_eq!(code(&o), 1);
    let o = fiberspec(d.path(), &["sweep", "--b", "0:1:0.5", "--m", "x"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn unwritable_output_dir() {
    let d = tempfile::tempdir().unwrap();
    let blocker = d.path().join("file");
    fs::write(&blocker, "").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_fiberspec"))
        .args(["sweep", "--b", "0:1:0.5", "--m", "0", "--out"])
        .arg(blocker.join("sub"))
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["sweep", "--b", "0:2:0.25", "--auto", "--svg"];
    assert_eq!(code(&fiberspec(a.path(), &args)), 0);
    assert_eq!(code(&fiberspec(b.path(), &args)), 0);
    for f in ["sweep.csv", "effective.csv", "sweep.svg"] {
        let x = fs::read(a.path().join("out").join(f)).unwrap();
        let y = fs::read(b.path().join("out").join(f)).unwrap();
        assert_eq!(x, y, "{f}");
    }
    let x = fiberspec(a.path(), &["classify", "--m", "1", "--b", "0.5"]);
    let y = fiberspec(b.path(), &["classify", "--m", "1", "--b", "0.5"]);
    assert_eq!(x.stdout, y.stdout);
}

#[test]
fn effective_and_crossing() {
    let d = tempfile::tempdir().unwrap();
    let o = fiberspec(d.path(), &["effective", "--b", "1.9"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["argmin_m"], 1);
    assert!(v["e_value"].as_f64().unwrap() < 0.9025);

    let o = fiberspec(d.path(), &["effective", "--b", "0:1:0.25"]);
    assert_eq!(code(&o), 0);
    let eff = fs::read_to_string(d.path().join("out/effective.csv")).unwrap();
    assert_eq!(eff.lines().count(), 6);

    let o = fiberspec(d.path(), &["crossing"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    let b0 = v["b0"].as_f64().unwrap();
    assert!((b0 - 1.674651644850129).abs() <= 1e-8, "{b0}");

    let o = fiberspec(d.path(), &["crossing", "--m-a", "0", "--m-b", "0"]);
    assert_eq!(code(&o), 1);
    let o = fiberspec(d.path(), &["crossing", "--lo", "0.1", "--hi", "0.5"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn derivative_matches_difference() {
    let d = tempfile::tempdir().unwrap();
    let o = fiberspec(d.path(), &["derivative", "--m", "1", "--b", "1.5", "--check-h", "1e-4"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    let hf = v["derivative"].as_f64().unwrap();
    let cd = v["central_difference"].as_f64().unwrap();
    assert!((hf - cd).abs() <= 1e-5);
    let o = fiberspec(d.path(), &["derivative", "--m", "0", "--b", "0.8"]);
    assert!((stdout_json(&o)["derivative"].as_f64().unwrap() - 0.4).abs() <= 1e-14);
}

#[test]
fn classify_examples() {
    let d = tempfile::tempdir().unwrap();
    let v = stdout_json(&fiberspec(d.path(), &["classify", "--m", "1", "--b", "0.5"]));
    for e in v["endpoints"].as_array().unwrap() {
        assert_eq!(e["verdict"], "LimitPoint");
        assert_eq!(e["exponents"], serde_json::json!([1.5, -0.5]));
    }
    assert_eq!(v["series"][0]["coeffs_symbolic"][1], "-1/3*b");
    assert_eq!(v["series"][1]["coeffs_symbolic"][1], "b");
    assert_eq!(v["series"][1]["resonance_order"], 2);

    let v = stdout_json(&fiberspec(d.path(), &["classify", "--m", "0", "--b", "2"]));
    for e in v["endpoints"].as_array().unwrap() {
        assert_eq!(e["verdict"], "LimitCircle");
        assert_eq!(e["log_case"], true);
    }

    let v = stdout_json(&fiberspec(d.path(), &["classify", "--m", "-2", "--b", "1"]));
    assert_eq!(v["endpoints"][0]["verdict"], "LimitPoint");
    assert_eq!(v["endpoints"][0]["exponents"], serde_json::json!([2.5, -1.5]));
    assert_eq!(code(&fiberspec(d.path(), &["classify", "--b", "1"])), 1);
}

#[test]
fn series_command() {
    let d = tempfile::tempdir().unwrap();
    let o = fiberspec(d.path(), &["series", "--m", "1", "--b", "0.6", "--s", "1.5", "--order", "3", "--theta", "0.01"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["exponent_exact"], "3/2");
    assert!((v["coeffs"][1].as_f64().unwrap() + 0.2).abs() <= 1e-15);
    assert_eq!(v["value"].as_array().unwrap().len(), 4);
    let o = fiberspec(d.path(), &["series", "--m", "1", "--b", "0.6", "--s", "0.5"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn certify_default_passes() {
    let d = tempfile::tempdir().unwrap();
    let o = fiberspec(d.path(), &["certify"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert_eq!(code(&o), 0, "{text}");
    assert!(!text.contains("FAIL"));
    assert!(!text.contains('\x1b'));
    let v: Value = serde_json::from_str(&fs::read_to_string(d.path().join("out/certify.json")).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["monotonicity"]["non_monotonic"], true);
    let w = &v["monotonicity"]["witness"];
    assert!(w["e_after"].as_f64().unwrap() < w["e_before"].as_f64().unwrap());
}

#[test]
fn certify_short_range_fails() {
    let d = tempfile::tempdir().unwrap();
    let o = fiberspec(d.path(), &["certify", "--b-max", "0.9"]);
    assert_eq!(code(&o), 2);
    let text = String::from_utf8_lossy(&o.stdout);
    let line = text.lines().find(|l| l.contains("non-monotonic")).unwrap();
    assert!(line.starts_with("FAIL"));
    let line = text.lines().find(|l| l.contains("increasing on [0,1)")).unwrap();
    assert!(line.starts_with("PASS"));
    assert_eq!(code(&fiberspec(d.path(), &["certify", "--grid-step", "0"])), 1);
}

#[test]
fn validate_passes() {
    let d = tempfile::tempdir().unwrap();
    let o = fiberspec(d.path(), &["validate"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(String::from_utf8_lossy(&o.stdout).contains("ln 2"));
}

#[test]
fn config_file_precedence_and_unknown_keys() {
    let d = tempfile::tempdir().unwrap();
    let good = d.path().join("good.json");
    fs::write(&good, r#"{"n_initial": 8, "n_max": 16, "basis": "legendre"}"#).unwrap();
    let o = fiberspec(d.path(), &["lambda", "--m", "1", "--b", "2.5", "--config", good.to_str().unwrap()]);
    let v = stdout_json(&o);
    assert_eq!(v["n_used"], 16);
    assert_eq!(code(&o), 2);
    let o = fiberspec(
        d.path(),
        &["lambda", "--m", "1", "--b", "2.5", "--config", good.to_str().unwrap(), "--basis", "angular", "--n-max", "64"],
    );
    assert_eq!(code(&o), 0);

    let bad = d.path().join("bad.json");
    fs::write(&bad, r#"{"n_maxx": 16}"#).unwrap();
    let o = fiberspec(d.path(), &["lambda", "--m", "1", "--b", "1", "--config", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("n_maxx"));
}
