use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use eigenbound::bounds::BoundReport;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_eigenbound"))
}

fn run_with(dir: &Path, problem: &str, extra: &[&str]) -> Output {
    let file = dir.join("problem.json");
    fs::write(&file, problem).unwrap();
    bin().arg("run").arg(&file).args(extra).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn infinity_laplacian_on_long_l_shape() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("out.json");
    let o = run_with(
        dir.path(),
        r#"{"operator":{"family":"infinity_laplacian"},"domain":{"shape":"l_shape","leg":7,"width":1}}"#,
        &["--json", json.to_str().unwrap()],
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r: BoundReport = serde_json::from_str(&fs::read_to_string(json).unwrap()).unwrap();
    let expect = 1.0 / (1.0 + 0.5_f64.sqrt());
    assert!((r.inradius - expect).abs() < 1e-12);
    let exact = (PI / (2.0 * expect)).powi(2);
    assert!((r.lower - exact).abs() < 1e-10 && (r.upper.unwrap() - exact).abs() < 1e-10);
}

#[test]
fn gradient_limit_from_inradius_alone() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_with(dir.path(), r#"{"operator":{"family":"gradient_limit"},"inradius_only":1.0}"#, &[]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("lower") && l.contains(" 1  exact")), "{out}");
    assert!(out.contains("length^-1"));
}

#[test]
fn square_with_oracle_is_sandwiched() {
    let dir = tempfile::tempdir().unwrap();
    let field = dir.path().join("field.csv");
    let profile = dir.path().join("profile.csv");
    let o = run_with(
        dir.path(),
        r#"{"operator":{"family":"laplacian","n":2},"domain":{"shape":"box","sides":[1,1]},"options":{"oracle":true,"grid_h":0.015625}}"#,
        &["--field-csv", field.to_str().unwrap(), "--profile-csv", profile.to_str().unwrap(), "--k-max", "1"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let value = |key: &str| -> f64 {
        let line = out.lines().find(|l| l.starts_with(key)).unwrap();
        line[16..].split_whitespace().next().unwrap().parse().unwrap()
    };
    let (lower, upper, oracle) = (value("lower"), value("upper"), value("oracle lambda_h"));
    assert!((lower - 8.143950846438688).abs() < 1e-9);
    assert!(lower <= oracle && oracle <= upper, "{out}");
    let field = fs::read_to_string(field).unwrap();
    assert!(field.starts_with("x,y,value\n"));
    assert_eq!(field.lines().count(), 1 + 63 * 63);
    let profile = fs::read_to_string(profile).unwrap();
    assert!(profile.starts_with("r,phi,dphi,residual\n"));
    assert_eq!(profile.lines().count(), 202);
}

#[test]
fn json_output_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let problem = r#"{"operator":{"family":"p_laplacian","p":3,"n":2},"domain":{"shape":"polygon","vertices":[[0,0],[2,0],[2.5,1],[1,2],[-0.5,1]]}}"#;
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(run_with(dir.path(), problem, &["--quiet", "--json", a.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(run_with(dir.path(), problem, &["--quiet", "--json", b.to_str().unwrap()]).status.code(), Some(0));
    let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let report: BoundReport = serde_json::from_slice(&ta).unwrap();
    let again = eigenbound_cli::report_json(&report);
    assert_eq!(again.as_bytes(), &ta[..]);
}

#[test]
fn quiet_suppresses_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_with(dir.path(), r#"{"operator":{"family":"gradient_limit"},"inradius_only":2.0}"#, &["--quiet"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn p_scan_table_and_warnings() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_with(
        dir.path(),
        r#"{"operator":{"family":"p_laplacian","p":5,"n":2},"inradius_only":1.0}"#,
        &["--p-scan", "2,5,50,500,500000"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let out = stdout(&o);
    let limit = (PI / 2.0).powi(2);
    let rows: Vec<(f64, f64)> = out
        .lines()
        .skip(1)
        .filter(|l| !l.contains("skipped"))
        .map(|l| {
            let f: Vec<f64> = l.split_whitespace().map(|v| v.parse().unwrap()).collect();
            (limit - f[1], f[2] - limit)
        })
        .collect();
    assert_eq!(rows.len(), 4);
    for w in rows.windows(2) {
        assert!(w[1].0 < w[0].0 && w[1].1 < w[0].1);
    }
    let last = rows.last().unwrap();
    assert!(last.0 < 1e-3 && last.1 < 1e-3);
}

#[test]
fn usage_and_validation_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let scan = run_with(dir.path(), r#"{"operator":{"family":"gradient_limit"},"inradius_only":1.0}"#, &["--p-scan", ""]);
    assert_eq!(scan.status.code(), Some(2));
    let schema = run_with(dir.path(), r#"{"operator":{"family":"laplacian","n":2},"domain":{"shape":"box","sides":"wide"}}"#, &[]);
    assert_eq!(schema.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&schema.stderr).contains("domain"));
    let bad = run_with(dir.path(), r#"{"operator":{"family":"p_laplacian","p":0.5,"n":2},"inradius_only":1.0}"#, &[]);
    assert_eq!(bad.status.code(), Some(2));
    let oracle = run_with(dir.path(), r#"{"operator":{"family":"gradient_limit"},"inradius_only":1.0}"#, &["--oracle"]);
    assert_eq!(oracle.status.code(), Some(2));
    let missing = bin().args(["run", "/nonexistent/problem.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
    let no_cmd = bin().output().unwrap();
    assert_eq!(no_cmd.status.code(), Some(2));
}

#[test]
fn numeric_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    // the Pucci certificate carries rounding-level residuals, which a
    // vanishing tolerance rejects
    let o = run_with(
        dir.path(),
        r#"{"operator":{"family":"pucci_max","gamma":1,"Gamma":2,"n":2},"domain":{"shape":"box","sides":[1,1]}}"#,
        &["--tol", "1e-300", "--k-max", "4"],
    );
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("certificate"));
}
