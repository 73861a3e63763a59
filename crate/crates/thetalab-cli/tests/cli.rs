use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};
use thetalab::checks::j_input;
use thetalab::io::{form_to_json, to_json};

fn thetalab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thetalab")).args(args).env_remove("THETALAB_TOL").output().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn pairing_of_delta_with_its_dual_partner_vanishes() {
    let dir = tempfile::tempdir().unwrap();
    let g = thetalab(&["series", "classic", "--name", "Delta", "--prec", "6"]);
    assert!(g.status.success());
    let f = thetalab(&["series", "classic", "--name", "E4sqE6_over_DeltaSq", "--prec", "6"]);
    assert!(f.status.success());
    let gp = write(dir.path(), "delta.json", std::str::from_utf8(&g.stdout).unwrap());
    let fp = write(dir.path(), "e42e6_dd.json", std::str::from_utf8(&f.stdout).unwrap());
    let o = thetalab(&["pair", "--g", &gp, "--f", &fp]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["value"]["re"], 0.0);
    assert_eq!(v["value"]["im"], 0.0);
    assert_eq!(v["exact"], true);
}

#[test]
fn fock_identities_report_per_identity() {
    let o = thetalab(&["fock", "verify", "--sig", "2,2", "--identity", "ddc"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["identity"], "ddc");
    assert_eq!(v["sig"], serde_json::json!([2, 2]));
    assert_eq!(v["pass"], true);
    assert_eq!(v["diff_term_count"], 0);
    let all = stdout_json(&thetalab(&["fock", "verify", "--sig", "3,1"]));
    assert!(all.as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn discriminant_info_and_weil_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let l = write(dir.path(), "l.json", r#"{"gram": [[2, 0], [0, -2]]}"#);
    let v = stdout_json(&thetalab(&["fqm", "info", "--lattice", &l]));
    assert_eq!(v["order"], 4);
    assert_eq!(v["level"], 4);
    let w = stdout_json(&thetalab(&["fqm", "weil", "--lattice", &l, "--word", "ST"]));
    assert_eq!(w["matrix"].as_array().unwrap().len(), 4);
}

#[test]
fn errors_are_machine_readable_with_exit_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"gram\": [[2, 0], ");
    let o = thetalab(&["fqm", "info", "--lattice", &bad]);
    assert_eq!(o.status.code(), Some(2));
    let v = stdout_json(&o);
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["exit_code"], 2);
    let o = thetalab(&["fqm", "info", "--lattice", "/nonexistent/l.json"]);
    assert_eq!(o.status.code(), Some(2));
    let odd = write(dir.path(), "odd.json", r#"{"gram": [[1]]}"#);
    assert_eq!(thetalab(&["fqm", "info", "--lattice", &odd]).status.code(), Some(2));
}

fn j_files(dir: &Path) -> (String, String) {
    let l = write(dir, "uu.json", r#"{"gram": [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]}"#);
    let f = write(dir, "j.json", &to_json(&form_to_json(&j_input(false, 30).unwrap())));
    (l, f)
}

#[test]
fn lift_near_the_diagonal_exits_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let (l, f) = j_files(dir.path());
    let near = write(dir.path(), "near.json", r#"{"h2": [[0.13, 1.3], [0.13, 1.3000001]]}"#);
    let o = thetalab(&["lift", "eval", "--lattice", &l, "--f", &f, "--point", &near]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout_json(&o)["error"]["kind"], "near_singular");
    let far = write(dir.path(), "far.json", r#"{"h2": [[0.13, 1.3], [-0.21, 0.87]]}"#);
    let o = thetalab(&["lift", "eval", "--lattice", &l, "--f", &f, "--point", &far]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["kind"], "scalar");
    assert!(v["error"].as_f64().unwrap() < 1e-5);
}

#[test]
fn scan_toward_the_diagonal_fits_a_logarithm() {
    let dir = tempfile::tempdir().unwrap();
    let (l, f) = j_files(dir.path());
    let spec = format!(
        r#"{{"lattice": "{l}", "f": "{f}", "h2": {{"z1": [0.13, 1.3], "z2": [0.13, 1.3], "dz1": [1.0, 0.0]}},
            "t_min": 0.001, "t_max": 0.1, "log_spacing": true}}"#
    );
    let spec = write(dir.path(), "geo.json", &spec);
    let out = dir.path().join("scan.csv");
    let o = thetalab(&["lift", "scan", "--geodesic", &spec, "--samples", "9", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,value,error"));
    let pts: Vec<(f64, f64)> = lines
        .map(|r| {
            let c: Vec<f64> = r.split(',').map(|x| x.parse().unwrap()).collect();
            (c[0].ln(), c[1])
        })
        .collect();
    assert_eq!(pts.len(), 9);
    // least squares value = c1 + c2 log t
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let c2 = sxy / sxx;
    let r2 = sxy * sxy / (sxx * syy);
    // a+(0, -1) = 1 for j - 744; Phi ~ -4 log|z1 - z2|
    assert!((c2 + 4.0).abs() < 0.05, "slope {c2}");
    assert!(r2 > 0.999, "R^2 {r2}");
}

#[test]
fn theta_output_is_deterministic_and_honours_the_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let l = write(dir.path(), "l.json", r#"{"gram": [[2, 0, 0], [0, 2, 0], [0, 0, -2]]}"#);
    let pt = write(dir.path(), "pt.json", r#"{"flows": [[1, 3, 0.3]]}"#);
    let args = ["theta", "eval", "--lattice", &l, "--phi", "phikm", "--tau", "0.1,0.9", "--point", &pt];
    let a = thetalab(&args);
    let b = thetalab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let coarse = Command::new(env!("CARGO_BIN_EXE_thetalab")).args(args).env("THETALAB_TOL", "1e-3").output().unwrap();
    let (fine, coarse) = (stdout_json(&a), stdout_json(&coarse));
    assert!(coarse["radius"].as_f64().unwrap() < fine["radius"].as_f64().unwrap());
}

#[test]
fn quick_verification_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = thetalab(&["verify", "--level", "quick", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["level"], "quick");
    assert!(v["build"].as_str().is_some());
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    let fock = v["fock_identities"].as_array().unwrap();
    assert!(fock.len() > 100);
    assert!(fock.iter().all(|r| r["pass"] == true));
}
