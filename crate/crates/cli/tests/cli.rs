use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coset-radon")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn nested_matrix_on_z4_as_csv() {
    let out = run(&["matrix", "--op", "radon-nested", "--group", "Z4", "--subgroup-L", "e", "--subgroup-H", "2", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1/2,0,1/2,0\n0,1/2,0,1/2\n");
}

#[test]
fn dual_matrix_as_json() {
    let out = run(&["matrix", "--op", "radon-dual-nested", "--group", "Z4", "--subgroup-L", "e", "--subgroup-H", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((v["rows"].as_u64(), v["cols"].as_u64()), (Some(4), Some(2)));
    assert_eq!(v["entries"], serde_json::json!(["1", "0", "0", "1", "1", "0", "0", "1"]));
    assert_eq!(v["domain"]["name"], "C(Z4/{0,2})");
}

#[test]
fn verify_writes_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let args = |p: &Path| {
        vec![
            "verify".to_string(),
            "--group".into(),
            "S3".into(),
            "--family".into(),
            "radon-nested".into(),
            "--family".into(),
            "transport".into(),
            "--out".into(),
            p.display().to_string(),
        ]
    };
    let first = Command::new(env!("CARGO_BIN_EXE_coset-radon")).args(args(&a)).output().unwrap();
    let mut second_args = args(&b);
    second_args.push("--sequential".into());
    let second = Command::new(env!("CARGO_BIN_EXE_coset-radon")).args(second_args).output().unwrap();
    assert!(first.status.success() && second.status.success());
    let a = std::fs::read(a).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, std::fs::read(b).unwrap());
}

#[test]
fn s3_nested_pairs_give_fifteen_cases() {
    let out = run(&["verify", "--group", "S3", "--family", "radon-nested"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let cases = v.as_array().unwrap();
    assert_eq!(cases.len(), 15);
    assert!(cases.iter().all(|c| c["claims"].as_array().unwrap().iter().all(|k| k["status"] != "failed")));
}

#[test]
fn precondition_violation_is_recorded() {
    let out = run(&["verify", "--group", "S3", "--family", "radon-nested", "--subgroup-L", "(12)", "--subgroup-H", "e"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let claims = v[0]["claims"].as_array().unwrap();
    assert!(!claims.is_empty());
    assert!(claims.iter().all(|k| k["status"] == "recorded"));
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(run(&["verify", "--group", "Nope"]).status.code(), Some(2));
    assert_eq!(run(&["matrix", "--op", "nope", "--group", "S3"]).status.code(), Some(2));
    assert_eq!(run(&["matrix", "--op", "radon-nested", "--group", "S3", "--subgroup-H", "(12)(13)x"]).status.code(), Some(2));
}

#[test]
fn config_file_drives_the_suite() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("suite.json");
    std::fs::write(&config, r#"{"groups": ["Z2xZ2"], "families": ["algebra"], "seed": 9}"#).unwrap();
    let out = run(&["verify", "--config", config.to_str().unwrap(), "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("case,group,family,L,H,K,claim,kind,status,residual,detail\n"));
    assert!(text.lines().skip(1).all(|l| l.contains(",Z2xZ2,algebra,")));
    assert!(text.contains("subspace-equality-unrestricted"));
}

#[test]
fn groups_listing_and_detail() {
    let out = run(&["groups"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let names: Vec<_> = v.as_array().unwrap().iter().map(|g| g["name"].as_str().unwrap().to_string()).collect();
    assert_eq!(names, ["Z4", "Z6", "Z2xZ2", "S3", "D4", "Q8", "S4"]);
    let out = run(&["groups", "--group", "S4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["subgroups"].as_array().unwrap().len(), 30);
}

#[test]
fn example_grid() {
    let out = run(&["example", "--radii", "10", "--angles", "4", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("r,angle,f,Rf,deviation\n"));
    assert_eq!(text.lines().count(), 41);
}
