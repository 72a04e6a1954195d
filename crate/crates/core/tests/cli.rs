use std::path::Path;
use std::process::{Command, Output};

use projprod::{NonSingularMap, PathEvaluator, Shape, SpherePoint, TcPlanner};
use serde_json::Value;

fn projprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_projprod"))
        .args(args)
        .env_remove("PROJPROD_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_query(dir: &Path, body: &str) -> String {
    let path = dir.join("q.json");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn plan_constant_path_when_endpoints_agree() {
    let dir = tempfile::tempdir().unwrap();
    let q = write_query(
        dir.path(),
        r#"{"from":{"factors":[[0.6,0.8],[0,1,0,0]]},"to":{"factors":[[-0.6,-0.8],[0,-1,0,0]]}}"#,
    );
    let out = projprod(&[
        "plan",
        "--nbar",
        "1,3",
        "--query",
        &q,
        "--path-samples",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["stratum"]["l"][0], 0);
    let path = v["path"].as_array().unwrap();
    assert_eq!(path.len(), 9);
    assert!(path.iter().all(|p| p == &path[0]));
}

#[test]
fn plan_matches_library_section() {
    let dir = tempfile::tempdir().unwrap();
    let q = write_query(
        dir.path(),
        r#"{"from":{"factors":[[1,0],[1,0]]},"to":{"factors":[[0,1],[1,0]]}}"#,
    );
    let out = projprod(&["plan", "--nbar", "1,1", "--query", &q]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);

    let shape: Shape = "1,1".parse().unwrap();
    let planner = TcPlanner::new(shape, NonSingularMap::auto(1).unwrap()).unwrap();
    let x = vec![SpherePoint::basis(1, 0), SpherePoint::basis(1, 0)];
    let y = vec![SpherePoint::basis(1, 1), SpherePoint::basis(1, 0)];
    let (label, path) = planner.product_section(&x, &y).unwrap();
    assert_eq!(v["stratum"], serde_json::to_value(&label).unwrap());
    let got: Vec<Vec<Vec<f64>>> = serde_json::from_value(v["path"].clone()).unwrap();
    let expected = path.sample(64);
    assert_eq!(got.len(), expected.len());
    // The binary and this test may be built at different optimization levels.
    for (g, e) in got.iter().zip(&expected) {
        for (gf, ef) in g.iter().zip(e.factors()) {
            for (a, b) in gf.iter().zip(ef.coords()) {
                assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
            }
        }
    }
}

#[test]
fn plan_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let q = write_query(dir.path(), r#"{"from": {"factors": [[1, 0]"#);
    let out = projprod(&["plan", "--nbar", "1,3", "--query", &q]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    let q = write_query(
        dir.path(),
        r#"{"from":{"factors":[[2,0],[1,0,0,0]]},"to":{"factors":[[1,0],[1,0,0,0]]}}"#,
    );
    assert_eq!(
        projprod(&["plan", "--nbar", "1,3", "--query", &q])
            .status
            .code(),
        Some(2)
    );

    let q = write_query(
        dir.path(),
        r#"{"from":{"factors":[[1,0],[1,0]]},"to":{"factors":[[1,0],[1,0]]}}"#,
    );
    assert_eq!(
        projprod(&["plan", "--nbar", "1,3", "--query", &q])
            .status
            .code(),
        Some(3)
    );

    assert_eq!(
        projprod(&["plan", "--nbar", "3,1", "--query", &q])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn bounds_reports() {
    let v = json(&projprod(&["bounds", "--nbar", "1,3"]));
    assert_eq!(v["cat"], 2);
    assert_eq!(v["tc_upper_new"], 2);
    assert_eq!(v["tc_exact"], 2);

    let v = json(&projprod(&["bounds", "--nbar", "1,2"]));
    assert_eq!(v["tc_upper_new"], 3);
    assert_eq!(v["tc_upper_ggtx"], 5);

    let v = json(&projprod(&["bounds", "--nbar", "2,3", "--tc-pn1", "3"]));
    assert_eq!(v["cat"], 3);
    assert_eq!(v["zcl_lower"], 4);
    assert_eq!(v["equality_flag"], true);
    assert_eq!(v["tc_exact"], 4);
}

#[test]
fn bounds_without_tc_input_names_the_flag() {
    let out = projprod(&["bounds", "--nbar", "5,7"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--tc-pn1"));
    let out = projprod(&["bounds", "--nbar", "5,7", "--tc-pn1", "7"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_maps_for_quaternions() {
    let out = projprod(&[
        "verify",
        "--suite",
        "maps",
        "--nbar",
        "3,5",
        "--samples",
        "2000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["suites"]["maps"][0]["kind"], "division_algebra");
    assert_eq!(v["suites"]["maps"][0]["report"]["pass"], true);
}

#[test]
fn verify_tc_with_polynomial_fallback() {
    let out = projprod(&[
        "verify",
        "--suite",
        "tc",
        "--nbar",
        "2,2,4",
        "--samples",
        "3000",
        "--probes",
        "200",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let tc = &v["suites"]["tc"];
    assert_eq!(tc["k"], 4);
    assert_eq!(tc["bound"], 4 + 2 + 2);
    for key in tc["histogram"].as_object().unwrap().keys() {
        assert!(key.parse::<usize>().unwrap() <= 8);
    }
}

#[test]
fn seed_from_environment_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("report.json");
    let args = [
        "verify",
        "--suite",
        "cat",
        "--nbar",
        "1,1",
        "--samples",
        "500",
        "--probes",
        "50",
    ];
    let env_run = Command::new(env!("CARGO_BIN_EXE_projprod"))
        .args(args)
        .args(["--out", file.to_str().unwrap()])
        .env("PROJPROD_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(env_run.status.code(), Some(0));
    assert!(env_run.stdout.is_empty());
    let flag_run = projprod(&[&args[..], &["--seed", "11"]].concat());
    assert_eq!(std::fs::read(&file).unwrap(), flag_run.stdout);
}

#[test]
fn invalid_tolerance_is_rejected() {
    let out = projprod(&[
        "verify",
        "--suite",
        "tc",
        "--nbar",
        "1,1",
        "--epsilon-strat",
        "0.9",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
