use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn rotsurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rotsurf")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, value: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_vec_pretty(value).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn surface(kind: &str, family: &str, params: Value) -> Value {
    json!({"kind": kind, "curve": {"family": family, "params": params, "s_domain": [0.0, 1.0]}, "t_domain": [-1.0, 1.0]})
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn classify_reports_first_kind_with_f_three() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "e.json", &surface("elliptic", "elliptic_thm2_i", json!({"delta1": 2.0, "delta3": 1.0})));
    let o = rotsurf(&["classify", "--spec", s(&spec)]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["verdict"], "first_kind");
    for pair in v["f_samples"].as_array().unwrap() {
        assert!((pair[1].as_f64().unwrap() - 3.0).abs() < 1e-10);
    }
    assert_eq!(v["f_formula_match"]["pass"], true);
}

#[test]
fn classify_through_the_oracle() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        &dir,
        "h.json",
        &surface("hyperbolic", "hyperbolic_thm5_ii", json!({"lambda1": 2.0, "lambda2": 1.0, "lambda3": 1.0})),
    );
    let o = rotsurf(&["classify", "--spec", s(&spec), "--h", "1e-3", "--s-count", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["verdict"], "second_kind");
    assert_eq!(v["laplacian"]["source"], "oracle");
    assert_eq!(v["f_formula_match"]["pass"], true);
}

#[test]
fn reports_are_byte_stable() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        &dir,
        "p.json",
        &surface("parabolic", "parabolic_thm7", json!({"mu1": 2.0, "mu2": 1.0, "mu4": 1.0, "epsilon": -1.0})),
    );
    for args in [
        vec!["sweep", "--s-count", "7", "--t-count", "3"],
        vec!["sweep", "--format", "csv", "--s-count", "7", "--t-count", "3"],
        vec!["invariants"],
        vec!["classify"],
    ] {
        let mut outputs = Vec::new();
        for threads in ["1", "4"] {
            let out = dir.path().join(format!("out{threads}"));
            let mut full = args.clone();
            full.extend(["--spec", s(&spec), "--out", s(&out)]);
            let o = Command::new(env!("CARGO_BIN_EXE_rotsurf"))
                .args(&full)
                .env("ROTSURF_THREADS", threads)
                .output()
                .unwrap();
            assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
            outputs.push(std::fs::read(&out).unwrap());
        }
        assert_eq!(outputs[0], outputs[1], "{args:?}");
    }
}

#[test]
fn sweep_csv_has_documented_columns() {
    let dir = TempDir::new().unwrap();
    let spec =
        write(&dir, "h.json", &surface("hyperbolic", "hyperbolic_thm5_i", json!({"delta1": 1.0, "delta2": 2.0})));
    let o = rotsurf(&["sweep", "--spec", s(&spec), "--format", "csv", "--s-count", "4", "--t-count", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,s,L,M,N,K,H2,dG12,dG13,dG14,dG23,dG24,dG34"));
    assert_eq!(lines.count(), 8);
    let help = String::from_utf8(rotsurf(&["--help"]).stdout).unwrap();
    assert!(help.contains("t, s, L, M, N, K, H2, dG12, dG13, dG14, dG23, dG24, dG34"));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(rotsurf(&["verify", "--theorem", "T7"]).status.code(), Some(0));
    assert_eq!(rotsurf(&["verify", "--theorem", "t7"]).status.code(), Some(0));
    let dir = TempDir::new().unwrap();
    let spec = write(
        &dir,
        "p.json",
        &surface("parabolic", "parabolic_thm7", json!({"mu1": 3.0, "mu2": 1.0, "mu4": -1.0, "epsilon": 1.0})),
    );
    let o = rotsurf(&["verify", "--theorem", "T7", "--spec", s(&spec)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["pass"], true);

    // A non-harmonic surface fails the premise of the harmonic check.
    let spec = write(&dir, "e.json", &surface("elliptic", "elliptic_thm2_i", json!({"delta1": 2.0, "delta3": 1.0})));
    assert_eq!(rotsurf(&["verify", "--theorem", "T1", "--spec", s(&spec)]).status.code(), Some(1));
    assert_eq!(rotsurf(&["verify", "--theorem", "T9"]).status.code(), Some(1));
}

#[test]
fn oracle_compare_fails_with_a_coarse_step() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        &dir,
        "e.json",
        &surface("elliptic", "elliptic_thm2_ii", json!({"lambda1": 2.0, "lambda2": 1.0, "lambda3": 1.0})),
    );
    assert_eq!(rotsurf(&["oracle-compare", "--spec", s(&spec)]).status.code(), Some(0));
    let o = rotsurf(&["oracle-compare", "--spec", s(&spec), "--h", "0.02", "--tol", "1e-9"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout_json(&o)["pass"], false);
}

#[test]
fn check_curve_rejects_a_slow_table() {
    let dir = TempDir::new().unwrap();
    let rows: Vec<[f64; 5]> = (0..41)
        .map(|i| {
            let s = i as f64 / 40.0;
            [s, 1.1f64.sqrt() * s, 0.0, 1.0, 0.0]
        })
        .collect();
    let curve = json!({"family": "custom_analytic", "s_domain": [0.0, 1.0], "samples": rows});
    let spec = write(&dir, "c.json", &json!({"kind": "elliptic", "curve": curve, "t_domain": [-1.0, 1.0]}));
    let o = rotsurf(&["check-curve", "--spec", s(&spec)]);
    assert_eq!(o.status.code(), Some(1));
    let v = stdout_json(&o);
    assert_eq!(v["pass"], false);
    assert!((v["unit_speed"]["max_residual"].as_f64().unwrap() - 0.1).abs() < 1e-9);
    assert_eq!(v["admissibility"]["pass"], true);

    let fine: Vec<[f64; 5]> = rows.iter().map(|r| [r[0], r[0], 0.0, 1.0, 0.0]).collect();
    let spec = write(&dir, "f.json", &json!({"family": "custom_analytic", "s_domain": [0.0, 1.0], "samples": fine}));
    let o = rotsurf(&["check-curve", "--spec", s(&spec)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout_json(&o).get("admissibility").is_none());
}

#[test]
fn input_errors_name_the_json_path() {
    let dir = TempDir::new().unwrap();
    let mut bad = surface("elliptic", "elliptic_thm2_i", json!({"delta1": 2.0, "delta3": 1.0}));
    bad["curve"]["s_domain"] = json!([0.0, "one"]);
    let p = write(&dir, "a.json", &bad);
    let o = rotsurf(&["invariants", "--spec", s(&p)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("$.curve.s_domain[1]"));

    let mut bad = surface("elliptic", "elliptic_thm2_i", json!({"delta1": 2.0, "delta3": 1.0}));
    bad["curve"]["colour"] = json!("red");
    let p = write(&dir, "b.json", &bad);
    let o = rotsurf(&["invariants", "--spec", s(&p)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));

    let p = write(&dir, "c.json", &surface("elliptic", "elliptic_thm2_i", json!({"delta1": 2.0})));
    let o = rotsurf(&["classify", "--spec", s(&p)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("$.curve"));

    let p = write(&dir, "d.json", &surface("hyperbolic", "elliptic_thm2_i", json!({"delta1": 2.0, "delta3": 1.0})));
    assert_eq!(rotsurf(&["sweep", "--spec", s(&p)]).status.code(), Some(1));

    assert_eq!(rotsurf(&["classify", "--spec", "/nonexistent.json"]).status.code(), Some(1));
    assert_eq!(rotsurf(&["classify", "--spec", s(&p), "--tol", "-1"]).status.code(), Some(1));
    let e = write(&dir, "e.json", &surface("elliptic", "elliptic_thm2_i", json!({"delta1": 2.0, "delta3": 1.0})));
    assert_eq!(rotsurf(&["classify", "--spec", s(&e), "--s-count", "2"]).status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_rotsurf"))
        .args(["invariants", "--spec", s(&e)])
        .env("ROTSURF_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn every_command_handles_every_kind() {
    let dir = TempDir::new().unwrap();
    let specs = [
        surface("elliptic", "elliptic_thm2_ii", json!({"lambda1": 1.0, "lambda2": 1.0, "lambda3": 2.0})),
        surface("hyperbolic", "hyperbolic_thm5_i", json!({"delta1": 2.0, "delta2": 0.5})),
        surface("parabolic", "parabolic_thm7", json!({"mu1": 1.0, "mu2": 1.0})),
    ];
    for (i, spec) in specs.iter().enumerate() {
        let p = write(&dir, &format!("{i}.json"), spec);
        for cmd in ["check-curve", "invariants", "sweep", "classify", "oracle-compare"] {
            for format in ["json", "csv"] {
                let o = rotsurf(&[cmd, "--spec", s(&p), "--format", format]);
                assert_eq!(o.status.code(), Some(0), "{cmd} {i}: {}", String::from_utf8_lossy(&o.stderr));
                assert!(!o.stdout.is_empty());
            }
        }
    }
}

#[test]
fn schema_file_lists_the_sweep_columns() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/sweep-schema.json");
    let schema: Value = serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
    let columns: Vec<&str> = schema["x-csv-columns"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(columns.join(","), "t,s,L,M,N,K,H2,dG12,dG13,dG14,dG23,dG24,dG34");
    let row = &schema["properties"]["rows"]["items"]["required"];
    assert_eq!(row.as_array().unwrap().len(), 8);
}
