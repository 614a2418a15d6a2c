use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name)
}

fn hocoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hocoh")).args(args).output().unwrap()
}

fn report(args: &[&str]) -> Value {
    let out = hocoh(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hocoh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn selftest_exits_zero() {
    let r = report(&["selftest"]);
    assert_eq!(r["pass"], true);
    assert!(r["timing"]["elapsed_ms"].is_u64());
}

#[test]
fn cohom_c2_trivial() {
    let s = spec("c2_f2.json");
    let r = report(&["cohom", "--spec", s.to_str().unwrap(), "--module", "trivial"]);
    assert_eq!(r["result"]["modules"][0]["grid"], serde_json::json!([[1, 1, 1], [1, 0, 0]]));
}

#[test]
fn s3_rational_trivial_module_is_concentrated_in_degree_zero() {
    let s = spec("s3_q.json");
    let r = report(&["cohom", "--spec", s.to_str().unwrap(), "--module", "trivial"]);
    for row in r["result"]["modules"][0]["grid"].as_array().unwrap() {
        assert_eq!(row, &serde_json::json!([1, 0, 0]));
    }
}

#[test]
fn zero_module_has_zero_grid() {
    let s = spec("trivial_group.json");
    let r = report(&["cohom", "--spec", s.to_str().unwrap(), "--module", "zero"]);
    let grid = &r["result"]["modules"][0]["grid"];
    assert!(grid.as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).all(|d| d == 0));
}

#[test]
fn ideals_tables() {
    let s = spec("s3_f2_a3.json");
    let r = report(&["ideals", "--spec", s.to_str().unwrap()]);
    let dims: Vec<u64> = r["result"]["rows"].as_array().unwrap().iter().map(|x| x["dim_j"].as_u64().unwrap()).collect();
    let ns: Vec<u64> = r["result"]["rows"].as_array().unwrap().iter().map(|x| x["n"].as_u64().unwrap()).collect();
    assert_eq!(dims, [5, 4, 4]);
    assert_eq!(ns, [1, 0, 0]);

    let s = spec("s3_f3_whole.json");
    let r = report(&["ideals", "--spec", s.to_str().unwrap()]);
    for row in r["result"]["rows"].as_array().unwrap() {
        assert_eq!(row["dim_j"], 5);
        assert_eq!(row["n"], 0);
    }
}

#[test]
fn h1_and_les_check_pass() {
    let s = spec("s3_f3.json");
    let p = s.to_str().unwrap();
    assert_eq!(report(&["h1", "--spec", p])["pass"], true);
    let r = report(&["les-check", "--spec", p, "--module", "sign", "--q-max", "2"]);
    assert_eq!(r["result"]["modules"][0]["sequences"].as_array().unwrap().len(), 2);
}

#[test]
fn out_and_text() {
    let s = spec("c3_f3.json");
    let target = std::env::temp_dir().join(format!("hocoh-out-{}.json", std::process::id()));
    let out = hocoh(&["verify", "--spec", s.to_str().unwrap(), "--out", target.to_str().unwrap(), "--text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("hocoh verify"));
    assert!(text.trim_end().ends_with("PASS"));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(written["pass"], true);
    std::fs::remove_file(target).ok();
}

#[test]
fn input_errors_exit_two() {
    let out = hocoh(&["info"]);
    assert_eq!(out.status.code(), Some(2));

    let out = hocoh(&["info", "--spec", "/nonexistent/problem.json"]);
    assert_eq!(out.status.code(), Some(2));

    let bad = scratch("broken.json", "{\"field\": \"F2\",\n \"generators\": [[1, 0]\n}");
    let out = hocoh(&["info", "--spec", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let s = spec("c2_f2.json");
    let out = hocoh(&["cohom", "--spec", s.to_str().unwrap(), "--module", "missing"]);
    assert_eq!(out.status.code(), Some(2));

    let out = hocoh(&["cohom", "--spec", s.to_str().unwrap(), "--p-max", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_normal_sigma_names_a_witness() {
    let bad = scratch("non_normal.json", r#"{"field": "F2", "generators": [[1, 2, 0], [1, 0, 2]], "sigma": [1]}"#);
    let out = hocoh(&["info", "--spec", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("$.sigma"), "{err}");
    assert!(err.contains("not normal"), "{err}");
}

#[test]
fn recheck_reproduces_every_dimension() {
    let s = spec("d4_f2.json");
    let p = s.to_str().unwrap();
    let mut a = report(&["cohom", "--spec", p]);
    let mut b = report(&["cohom", "--spec", p, "--recheck"]);
    assert_eq!(b["recheck"], true);
    for r in [&mut a, &mut b] {
        r.as_object_mut().unwrap().remove("timing");
        r.as_object_mut().unwrap().remove("recheck");
    }
    assert_eq!(a, b);
}
