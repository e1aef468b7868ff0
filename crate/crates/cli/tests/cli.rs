use std::fs;
use std::process::{Command, Output};

fn hypgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypgeo")).args(args).output().expect("spawn hypgeo")
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = hypgeo(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("single JSON object")
}

#[test]
fn eval_w_matches_closed_form_when_b_equals_c() {
    let v = json(&["eval", "--a", "0.5", "--b", "0.7", "--c", "0.7", "--z-re", "0.3", "--z-im", "0.4"]);
    // w = 1/(1-z)
    let d = 0.7f64 * 0.7 + 0.4 * 0.4;
    assert!((v["value_re"].as_f64().unwrap() - 0.7 / d).abs() < 1e-13);
    assert!((v["value_im"].as_f64().unwrap() - 0.4 / d).abs() < 1e-13);
}

#[test]
fn eval_hyp2f1_elementary() {
    // 2F1(1,1;2;z) = -log(1-z)/z
    let v = json(&["eval", "--a", "1", "--b", "1", "--c", "2", "--z-re", "0.5", "--quantity", "hyp2f1"]);
    assert!((v["value_re"].as_f64().unwrap() - 2.0 * 2f64.ln()).abs() < 1e-14);
    assert_eq!(v["value_im"].as_f64().unwrap(), 0.0);
}

#[test]
fn eval_functional_real_on_real_axis() {
    let v = json(&["eval", "--a", "0.5", "--b", "0.5", "--c", "1", "--z-re", "-0.5", "--quantity", "functional"]);
    assert!(v["value_im"].as_f64().unwrap().abs() < 1e-12);
    assert!(v["value_re"].as_f64().unwrap() > 0.0);
}

#[test]
fn bound_reports_sufficient_value() {
    let v = json(&["bound", "--a", "0.1", "--b", "0.2", "--c", "0.9"]);
    assert!((v["bound"].as_f64().unwrap() + 0.109_090_909_1).abs() < 1e-9);
    assert!(v["bound_depth3"].as_f64().unwrap() >= v["bound"].as_f64().unwrap());
    assert_eq!(v["class"], "white");
}

#[test]
fn classify_keys() {
    let v = json(&["classify", "--a", "0.5", "--b", "0.5", "--c", "1"]);
    assert_eq!(v["class"], "black");
    assert_eq!(v["case"], "II");
    assert!(v["bound"].is_null());
    let v = json(&["classify", "--a", "0.3", "--b", "0.3", "--c", "0.7"]);
    assert_eq!(v["case"], "I");
    assert!(v["lambda"].as_f64().unwrap() > 0.0);
    let v = json(&["classify", "--a", "0.05", "--b", "0.4", "--c", "1"]);
    assert_eq!(v["class"], "gray");
}

#[test]
fn probe_diverges() {
    let v = json(&["probe", "--a", "0.3", "--b", "0.3", "--c", "0.7", "--theta-min", "1e-5"]);
    assert_eq!(v["classification"], "DIVERGES");
    let direct = v["rew_direct"].as_array().unwrap();
    assert!(direct.last().unwrap().as_f64().unwrap() < -100.0);
}

#[test]
fn kappa_b_equals_c() {
    let v = json(&["kappa", "--a", "0.5", "--b", "0.7", "--c", "0.7", "--rings", "16", "--angles", "128"]);
    assert!(v["kappa_min"].as_f64().unwrap().abs() < 1e-3);
    assert_eq!(v["boundary_divergence"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(hypgeo(&["eval", "--a", "0.5", "--b", "0.5", "--c", "-1", "--z-re", "0.2"]).status.code(), Some(2));
    assert_eq!(hypgeo(&["eval", "--a", "0.5", "--b", "0.5", "--c", "1", "--z-re", "1"]).status.code(), Some(2));
    assert_eq!(hypgeo(&["kappa", "--a", "0.5", "--b", "0.5", "--c", "1", "--rmax", "1.5"]).status.code(), Some(2));
    assert_eq!(hypgeo(&["scan", "--na", "1"]).status.code(), Some(2));
    // z outside the closed unit disk
    assert_eq!(
        hypgeo(&["eval", "--a", "0.5", "--b", "0.5", "--c", "1", "--z-re", "1.5", "--quantity", "functional"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hypgeo(&["eval", "--a", "0.5", "--b", "0.5", "--c", "1", "--z-re", "0.2", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(hypgeo(&["eval", "--a", "0.5"]).status.code(), Some(2));
}

#[test]
fn convergence_failures_exit_3() {
    let series = hypgeo(&["eval", "--a", "3000", "--b", "2000", "--c", "1.5", "--z-re", "-0.95", "--z-im", "0.3", "--quantity", "hyp2f1"]);
    assert_eq!(series.status.code(), Some(3));
    let overflow = hypgeo(&["eval", "--a", "300", "--b", "300", "--c", "0.5", "--z-re", "0.95", "--z-im", "0.2"]);
    assert_eq!(overflow.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&overflow.stderr).contains("overflow"));
}

#[test]
fn scan_two_by_two_header() {
    let dir = tempfile::tempdir().unwrap();
    let pgm = dir.path().join("s.pgm");
    let out = hypgeo(&[
        "scan", "--c", "1", "--na", "2", "--nb", "2", "--amin", "1.5", "--amax", "1.9", "--bmin", "0.1", "--bmax",
        "0.3", "--out", pgm.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let bytes = fs::read(&pgm).unwrap();
    assert_eq!(bytes, b"P5\n2 2\n255\n\xff\xff\xff\xff");
}

#[test]
fn scan_is_deterministic_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let pgm = dir.path().join(format!("{name}.pgm"));
        let csv = dir.path().join(format!("{name}.csv"));
        let out = hypgeo(&["scan", "--out", pgm.to_str().unwrap(), "--csv", csv.to_str().unwrap()]);
        assert!(out.status.success());
        (fs::read(pgm).unwrap(), fs::read_to_string(csv).unwrap())
    };
    let (p1, c1) = run("a");
    let (p2, c2) = run("b");
    assert_eq!(p1, p2);
    assert_eq!(c1, c2);
    assert!(p1.starts_with(b"P5\n200 200\n255\n"));
    assert_eq!(p1.len(), 15 + 200 * 200);
    assert_eq!(c1.lines().count(), 200 * 200 + 1);
    assert_eq!(c1.lines().next(), Some("a,b,class,bound"));
    assert!(!c1.contains('\r'));
}

#[test]
fn default_scan_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let pgm = dir.path().join("fig.pgm");
    assert!(hypgeo(&["scan", "--c", "1", "--out", pgm.to_str().unwrap()]).status.success());
    let golden = include_bytes!("golden/region_200.pgm");
    assert!(fs::read(pgm).unwrap() == golden.as_slice());
}

#[test]
fn scan_json_counts() {
    let v = json(&["scan", "--na", "20", "--nb", "20"]);
    let total: u64 = ["black", "gray", "white"].iter().map(|k| v[k].as_u64().unwrap()).sum();
    assert_eq!(total, 400);
    assert!(v["black"].as_u64().unwrap() > 0 && v["gray"].as_u64().unwrap() > 0);
}

#[test]
fn verify_fast_passes() {
    let out = hypgeo(&["verify", "--suite", "fast"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 12);
}
