use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use std::sync::Arc;

use peterweyl_cli::formats::{write_coefficients, write_grid_function, CoefficientFile};
use peterweyl_core::fourier::FourierCoefficients;
use peterweyl_core::group::{haar_quadrature, GroupKind};
use peterweyl_core::samples::random_function;
use serde_json::Value;

fn run(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_peterweyl"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// The number following `label` on its own stdout line.
fn printed(o: &Output, label: &str) -> f64 {
    stdout(o)
        .lines()
        .find_map(|l| l.strip_prefix(label))
        .unwrap_or_else(|| panic!("no {label:?} in {}", stdout(o)))
        .trim()
        .parse()
        .unwrap()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn transform_poisson_builtin() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["transform", "--group", "t1", "--bandlimit", "64", "--input", "poisson:1.0"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(printed(&o, "roundtrip sup error:") <= 1e-9);
    let file: CoefficientFile =
        serde_json::from_str(&fs::read_to_string(dir.path().join("coefficients.json")).unwrap()).unwrap();
    let t = file.to_coefficients().unwrap();
    assert_eq!(t.dual().len(), 129);
    for (xi, n) in t.dual().iter().zip(t.hs_norms()) {
        assert!((n - (-xi.sqrt_casimir()).exp()).abs() <= 1e-12);
    }
    let decay = fs::read_to_string(dir.path().join("decay.csv")).unwrap();
    assert!(decay.starts_with("sqrt_lambda,hsnorm\n"));
    assert_eq!(decay.lines().count(), 130);
    assert_eq!(json(&dir.path().join("manifest.json"))["command"], "transform");
}

#[test]
fn transform_grid_csv_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let grid = Arc::new(haar_quadrature(GroupKind::Su2, 3));
    let input = dir.path().join("f.csv");
    write_grid_function(&input, &random_function(&grid, 1, 4)).unwrap();
    let o = run(&["transform", "--group", "su2", "--bandlimit", "3", "--input", input.to_str().unwrap()], &dir.path().join("o"));
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(printed(&o, "roundtrip sup error:") <= 1e-9);

    let wrong = run(&["transform", "--group", "su2", "--bandlimit", "4", "--input", input.to_str().unwrap()], &dir.path().join("p"));
    assert_eq!(code(&wrong), 2);
}

#[test]
fn malformed_csv_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.csv");
    fs::write(&input, "node,x,re,im\n0,0.0,not-a-number,0\n").unwrap();
    let o = run(&["transform", "--input", input.to_str().unwrap()], &dir.path().join("o"));
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("bad.csv"));
}

#[test]
fn classify_poisson_and_heat() {
    let dir = tempfile::tempdir().unwrap();
    let coeffs = dir.path().join("t");
    assert_eq!(code(&run(&["transform", "--bandlimit", "16", "--input", "poisson:2.0"], &coeffs)), 0);
    let path = coeffs.join("coefficients.json");
    let o = run(
        &["classify", "--bandlimit", "16", "--weight", "gevrey:1", "--input", path.to_str().unwrap()],
        &dir.path().join("c"),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let report = json(&dir.path().join("c/decay_report.json"));
    let h_star = report["h_star"].as_f64().unwrap();
    assert!((h_star - 0.5).abs() <= 0.05, "{h_star}");
    assert_eq!(report["super_decay"], false);
    let csv = fs::read_to_string(dir.path().join("c/decay_report.csv")).unwrap();
    assert!(csv.starts_with("sqrt_lambda,log_hsnorm,fitted\n"));
    assert!(fs::read_to_string(dir.path().join("c/seminorms.csv")).unwrap().starts_with("j,supnorm,weighted\n"));

    let heat = run(&["classify", "--bandlimit", "16", "--weight", "gevrey:1", "--input", "heat:0.5"], &dir.path().join("h"));
    assert_eq!(code(&heat), 0);
    assert_eq!(json(&dir.path().join("h/decay_report.json"))["super_decay"], true);
}

#[test]
fn classify_zero_coefficients_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zero.json");
    write_coefficients(&path, &FourierCoefficients::zeros(GroupKind::Torus1, 16, 1)).unwrap();
    let o = run(&["classify", "--bandlimit", "16", "--input", path.to_str().unwrap()], &dir.path().join("o"));
    assert_eq!(code(&o), 3, "{}", stderr(&o));
}

#[test]
fn factorize_global() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["factorize", "--input", "poisson:2.0", "--weight", "gevrey:1", "--h", "0.5", "--h-prime", "1"],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(printed(&o, "residual:") <= 1e-10);
    assert!(printed(&o, "min decay-transfer margin:") >= -1e-10);
    let bundle = json(&dir.path().join("factorization.json"));
    assert!(bundle["residual"].as_f64().unwrap() <= 1e-10);
    assert_eq!(bundle["params"]["h_prime"], 1.0);
    assert_eq!(bundle["multipliers"].as_array().unwrap().len(), 33);
    for name in ["g.json", "f_prime.json", "margins.csv", "manifest.json"] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
}

#[test]
fn factorize_parameter_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["factorize", "--input", "poisson:2.0", "--h", "1", "--h-prime", "0.5"], dir.path());
    assert_eq!(code(&o), 2);
    let o = run(
        &["factorize", "--supported", "--bump-order", "1", "--weight", "gevrey:0.5", "--input", "poisson:1", "--h", "0.5", "--h-prime", "1"],
        dir.path(),
    );
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("quasianalytic"));
    let o = run(&["factorize", "--group", "su2", "--supported", "--weight", "gevrey:0.5", "--input", "poisson:1"], dir.path());
    assert_eq!(code(&o), 2);
}

#[test]
fn factorize_supported() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["factorize", "--supported", "--bandlimit", "256", "--weight", "gevrey:0.5", "--input", "poisson:1", "--h", "0.5", "--h-prime", "1"],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(printed(&o, "residual:") <= 1e-7);
    let bundle = json(&dir.path().join("factorization.json"));
    assert_eq!(bundle["pieces"], 27);
    assert_eq!(bundle["eigen_bound_holds"], true);
    assert!(dir.path().join("g.csv").exists() && dir.path().join("eigenvalues.csv").exists());
}

#[test]
fn factorize_supported_singular_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &[
            "factorize", "--supported", "--bandlimit", "512", "--weight", "gevrey:0.5", "--input", "poisson:1", "--h", "0.01",
            "--h-prime", "0.05", "--bump-order", "1.5",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 4, "{}", stderr(&o));
    assert!(stderr(&o).contains("k=-512"));
}

#[test]
fn factorize_vector_su2() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["factorize", "--group", "su2", "--rep", "0,1", "--seed", "17"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(printed(&o, "vector residual:") <= 1e-9);
    let v = json(&dir.path().join("vector.json"));
    assert_eq!(v["v"].as_array().unwrap().len(), 3);
    assert!(v["orbit_residual"].as_f64().unwrap() <= 1e-9);
    let bad = run(&["factorize", "--group", "su2", "--rep", "0,x"], dir.path());
    assert_eq!(code(&bad), 2);
}

#[test]
fn verify_passes_and_catches_injected_fault() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify"], dir.path());
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
    assert!(!stdout(&o).contains("FAIL"));

    let f = run(&["verify", "--inject-fault", "conv-sign"], &dir.path().join("f"));
    assert_eq!(code(&f), 1);
    assert!(stderr(&f).contains("conv-theorem"));
    let results = json(&dir.path().join("f/verify.json"));
    let failing: Vec<&str> = results
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["pass"] == false)
        .map(|r| r["property"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["conv-theorem"]);
}

#[test]
fn verify_pass_set_is_seed_independent() {
    let dir = tempfile::tempdir().unwrap();
    let pass_set = |seed: u64| {
        let out = dir.path().join(format!("s{seed}"));
        let o = run(&["verify", "--seed", &seed.to_string()], &out);
        assert_eq!(code(&o), 0);
        json(&out.join("verify.json"))
            .as_array()
            .unwrap()
            .iter()
            .map(|r| (r["property"].as_str().unwrap().to_owned(), r["pass"].as_bool().unwrap()))
            .collect::<Vec<_>>()
    };
    let first = pass_set(0);
    for seed in 1..5 {
        assert_eq!(pass_set(seed), first);
    }
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["factorize", "--group", "su2", "--bandlimit", "3", "--input", "heat:0.3", "--seed", "5"];
    assert_eq!(code(&run(&args, dir.path())), 0);
    let first: Vec<Vec<u8>> =
        ["factorization.json", "g.json", "f_prime.json", "manifest.json"].iter().map(|n| fs::read(dir.path().join(n)).unwrap()).collect();
    assert_eq!(code(&run(&args, dir.path())), 0);
    for (n, bytes) in ["factorization.json", "g.json", "f_prime.json", "manifest.json"].iter().zip(first) {
        assert_eq!(fs::read(dir.path().join(n)).unwrap(), bytes, "{n}");
    }
    let manifest = json(&dir.path().join("manifest.json"));
    assert_eq!(manifest["seed"], 5);
    assert_eq!(manifest["input"], "heat:0.3");
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(&["transform", "--group", "so3", "--input", "poisson:1"], dir.path())), 2);
    assert_eq!(code(&run(&["transform"], dir.path())), 2);
    assert_eq!(code(&run(&["transform", "--bandlimit", "x"], dir.path())), 2);
    assert_eq!(code(&run(&["transform", "--group", "t2", "--input", "bump:2:0.5"], dir.path())), 2);
}
