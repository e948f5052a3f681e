use std::io::Write;
use std::process::{Command, Output};

use curvkind_cli::report::{AnalysisReport, CertifyReport};
use curvkind_core::weights::Theorem;

fn curvkind(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvkind")).args(args).env_remove("CURVKIND_NMAX").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn analyze_json(model: &str) -> (String, AnalysisReport) {
    let o = curvkind(&["analyze", "--model", model, "--json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let rep = serde_json::from_str(&text).unwrap();
    (text, rep)
}

fn certify_json(args: &[&str]) -> CertifyReport {
    let mut full = vec!["certify", "--json"];
    full.extend_from_slice(args);
    let o = curvkind(&full);
    assert!(o.status.success());
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn product_sphere_report() {
    let (_, rep) = analyze_json(r#"{"kind":"product_sphere","n":5}"#);
    let clusters: Vec<(f64, usize)> = rep.second_kind.multiplicities.iter().map(|c| (c.value, c.multiplicity)).collect();
    assert_eq!(clusters.len(), 3);
    assert!((clusters[0].0 + 0.6).abs() < 1e-10 && clusters[0].1 == 1);
    assert!(clusters[1].0.abs() < 1e-10 && clusters[1].1 == 4);
    assert!((clusters[2].0 - 1.0).abs() < 1e-10 && clusters[2].1 == 9);
    assert_eq!(rep.forms.iter().map(|f| f.p).collect::<Vec<_>>(), vec![1, 2]);
}

#[test]
fn flat_report_uses_flat_branch() {
    let (_, rep) = analyze_json(r#"{"kind":"constant_curvature","n":4,"kappa":0}"#);
    assert!(rep.second_kind.eigenvalues.iter().all(|&v| v == 0.0));
    assert!(rep.curvature.flat);
    let a = rep.certificates.iter().find(|c| c.theorem == Theorem::A && c.part == "main").unwrap();
    assert!(a.holds());
    assert_eq!(a.conclusion, "flat");
}

#[test]
fn json_round_trips_and_is_deterministic() {
    for model in [r#"{"kind":"su3_so3"}"#, r#"{"kind":"perturbed","base":{"kind":"product_sphere","n":6},"kappa":-0.01}"#] {
        let (text, rep) = analyze_json(model);
        let again = serde_json::to_string_pretty(&rep).unwrap() + "\n";
        assert_eq!(again, text);
        assert_eq!(analyze_json(model).0, text);
    }
}

#[test]
fn sphere_certificates() {
    let rep = certify_json(&["--model", r#"{"kind":"constant_curvature","n":6,"kappa":1}"#]);
    let holds = |t: Theorem, part: &str, p: Option<usize>| {
        rep.certificates
            .iter()
            .find(|c| c.theorem == t && c.part == part && p.is_none_or(|p| c.p_range == vec![p]))
            .unwrap()
            .holds()
    };
    assert!(holds(Theorem::A, "main", None));
    assert!(holds(Theorem::B, "a", None));
    for p in 1..=3 {
        assert!(holds(Theorem::C, "a", Some(p)));
    }
    assert!(rep.certificates.iter().all(|c| c.reproduce() == c.verdict));
}

#[test]
fn su3_certificates() {
    let rep = certify_json(&["--model", r#"{"kind":"su3_so3"}"#]);
    assert_eq!(rep.positivity.summary, "9-positive, not 8-nonnegative");
    let b = rep.certificates.iter().find(|c| c.theorem == Theorem::B && c.part == "a").unwrap();
    assert!(!b.holds());
    assert!((b.sums[0].k - 35.0 / 6.0).abs() < 1e-12);
}

#[test]
fn theorem_d_with_kappa() {
    let rep = certify_json(&["--model", r#"{"kind":"product_sphere","n":5}"#, "--kappa", "-1"]);
    let d = rep.certificates.iter().find(|c| c.theorem == Theorem::DHypothesis).unwrap();
    assert!(d.holds());
    assert!((d.sums[0].value + 0.6).abs() < 1e-10);
}

#[test]
fn broken_bianchi_exits_3() {
    // antisymmetric and pair symmetric, but the cyclic sum over (0,1,2) fails
    let n4 = 4;
    let at4 = |i: usize, j: usize, k: usize, l: usize| ((i * n4 + j) * n4 + k) * n4 + l;
    let mut c4 = vec![0.0; 256];
    for (a, b, c, d) in [(0, 1, 2, 3), (2, 3, 0, 1)] {
        c4[at4(a, b, c, d)] = 1.0;
        c4[at4(b, a, c, d)] = -1.0;
        c4[at4(a, b, d, c)] = -1.0;
        c4[at4(b, a, d, c)] = 1.0;
    }
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "{}", serde_json::json!({"n": 4, "components": c4})).unwrap();
    let o = curvkind(&["analyze", "--dense", file.path().to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(3));
    let body: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(body["error"], "invalid_curvature");
    let worst = &body["report"]["worst"];
    let bianchi = worst.as_array().unwrap().iter().find(|v| v["kind"] == "first_bianchi").unwrap();
    assert!(bianchi["residual"].as_f64().unwrap() > 0.5);
    assert!(String::from_utf8_lossy(&o.stderr).contains("FirstBianchi"));
}

#[test]
fn valid_dense_input() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    let mut comps = vec![0.0; 16];
    let at = |i: usize, j: usize, k: usize, l: usize| ((i * 2 + j) * 2 + k) * 2 + l;
    comps[at(0, 1, 0, 1)] = 1.0;
    comps[at(1, 0, 1, 0)] = 1.0;
    comps[at(0, 1, 1, 0)] = -1.0;
    comps[at(1, 0, 0, 1)] = -1.0;
    write!(file, "{}", serde_json::json!({"n": 2, "components": comps})).unwrap();
    let o = curvkind(&["spectrum", "--dense", file.path().to_str().unwrap(), "--json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let body: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let eig: Vec<f64> = serde_json::from_value(body[0]["eigenvalues"].clone()).unwrap();
    assert_eq!(eig.len(), 2);
    assert!(eig.iter().all(|v| (v - 1.0).abs() < 1e-12));
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(curvkind(&["analyze", "--model", "{nope"]).status.code(), Some(2));
    assert_eq!(curvkind(&["analyze", "--model", r#"{"kind":"torus"}"#]).status.code(), Some(2));
    assert_eq!(curvkind(&["analyze", "--dense", "/nonexistent/r.json"]).status.code(), Some(2));
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"{{"n": 2, "components": [1, 2]}}"#).unwrap();
    assert_eq!(curvkind(&["analyze", "--dense", file.path().to_str().unwrap()]).status.code(), Some(2));
    let sphere = r#"{"kind":"constant_curvature","n":4,"kappa":1}"#;
    assert_eq!(curvkind(&["analyze", "--model", sphere, "--p", "x"]).status.code(), Some(2));
    assert_eq!(curvkind(&["analyze", "--model", sphere, "--p", "9"]).status.code(), Some(2));
    assert_eq!(curvkind(&["analyze"]).status.code(), Some(2));
}

#[test]
fn dimension_cap_and_override() {
    let big = r#"{"kind":"constant_curvature","n":13,"kappa":1}"#;
    assert_eq!(curvkind(&["certify", "--model", big]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_curvkind"))
        .args(["certify", "--model", big, "--json"])
        .env("CURVKIND_NMAX", "13")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn spectrum_subcommand() {
    let o = curvkind(&["spectrum", "--model", r#"{"kind":"constant_curvature","n":4,"kappa":1}"#, "--operator", "ric-l", "--p", "2", "--json"]);
    let body: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let vals = body[0]["eigenvalues"].as_array().unwrap();
    assert_eq!(vals.len(), 6);
    assert!(vals.iter().all(|v| (v.as_f64().unwrap() - 4.0).abs() < 1e-12));
    let t = curvkind(&["spectrum", "--model", r#"{"kind":"su3_so3"}"#, "--table"]);
    assert!(stdout(&t).contains("-1.5 ×5, 2 ×9"));
}

#[test]
fn selftest_runs() {
    let o = curvkind(&["selftest", "--n-max", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("selftest passed"));
    let o = curvkind(&["selftest", "--seeds", "50", "--n-max", "4", "--json"]);
    assert!(o.status.success());
    let body: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(body["passed"], true);
    assert_eq!(body["config"]["draws"], 50);
}

#[test]
fn table_output() {
    let o = curvkind(&["analyze", "--model", r#"{"kind":"product_sphere","n":5}"#]);
    let text = stdout(&o);
    assert!(text.contains("second_kind (dim 14): -0.6, 0 ×4, 1 ×9"));
    assert!(text.contains("6-positive, not 5-nonnegative"));
}
