//! CLI contract: exit codes, report schemas, determinism, and fixture
//! resolution through HKCONES_FIXTURE_DIR.

use hkcones::cli::run;
use hkcones::model::{builtin, HKModel};
use serde_json::Value;
use std::path::Path;

fn run_to_file(args: &[&str], out: &Path) -> i32 {
    let mut argv = vec!["hkcones"];
    argv.extend_from_slice(args);
    argv.push("--out");
    let out = out.to_str().unwrap();
    argv.push(out);
    run(argv)
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let code = run_to_file(args, &path);
    let value = if path.exists() {
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap()
    } else {
        Value::Null
    };
    (code, value)
}

#[test]
fn zariski_worked_example() {
    let (code, v) = run_json(&["zariski", "--fixture", "hilb2-s1", "--class", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["positive"], serde_json::json!(["1", "0"]));
    assert_eq!(v["negative_coeffs"]["E"], "1/2");
}

#[test]
fn zariski_domain_error_exits_1() {
    let (code, v) = run_json(&["zariski", "--fixture", "hilb2-s1", "--class", "-1,0"]);
    assert_eq!(code, 1);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["error"]["code"], "NotPseudoEffective");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(["hkcones", "zariski", "--fixture", "hilb2-s1"]), 2);
    assert_eq!(
        run(["hkcones", "zariski", "--fixture", "nope", "--class", "1,1"]),
        2
    );
    assert_eq!(
        run(["hkcones", "zariski", "--fixture", "hilb2-s1", "--class", "1"]),
        2
    );
    assert_eq!(run(["hkcones", "frobnicate"]), 2);
}

#[test]
fn loci_unstable_ray() {
    let (code, v) = run_json(&["loci", "--fixture", "fano-cubic-scroll", "--class", "7,-3"]);
    assert_eq!(code, 0);
    assert_eq!(v["b_plus"][0]["label"], "P");
    assert_eq!(v["b_plus"][0]["dim"], 2);
    assert_eq!(v["stable"], false);
}

#[test]
fn rank_unsupported_exits_1() {
    let (code, v) = run_json(&["chambers", "--fixture", "k3n-mixed"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "RankUnsupported");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["chambers", "--fixture", "fano-cubic-scroll"],
        vec!["destab", "--fixture", "fano-cubic-scroll", "--class", "4,-2", "--ample", "1,0"],
        vec!["fan-svg", "--fixture", "hilb2-s1"],
        vec!["validate", "--fixture", "hilb2-s2"],
        vec!["membership", "--fixture", "k3-two-curves", "--class", "2,1"],
    ];
    for (i, case) in cases.iter().enumerate() {
        let p1 = dir.path().join(format!("a{}.out", i));
        let p2 = dir.path().join(format!("b{}.out", i));
        assert_eq!(run_to_file(case, &p1), 0, "{:?}", case);
        assert_eq!(run_to_file(case, &p2), 0, "{:?}", case);
        let b1 = std::fs::read(&p1).unwrap();
        let b2 = std::fs::read(&p2).unwrap();
        assert_eq!(b1, b2, "{:?} not deterministic", case);
        assert!(!b1.is_empty());
    }
}

#[test]
fn fixture_json_round_trip() {
    for name in hkcones::model::BUILTIN_NAMES {
        let m = builtin(name).unwrap();
        let text = m.to_json();
        let back = HKModel::from_json(name, &text).unwrap();
        assert_eq!(back, m, "{}", name);
        assert_eq!(back.to_json(), text, "{}", name);
    }
}

#[test]
fn fixture_dir_lookup_and_file_path() {
    // Batch mode determinism is checked here, before the env var below
    // can change the fixture set (this test owns the variable).
    let scratch = tempfile::tempdir().unwrap();
    let p1 = scratch.path().join("all1.json");
    let p2 = scratch.path().join("all2.json");
    assert_eq!(run_to_file(&["validate", "--all-fixtures"], &p1), 0);
    assert_eq!(run_to_file(&["validate", "--all-fixtures"], &p2), 0);
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());

    let dir = tempfile::tempdir().unwrap();
    let m = builtin("k3-two-curves").unwrap();
    let path = dir.path().join("custom-k3.json");
    std::fs::write(&path, m.to_json()).unwrap();

    // Explicit path works without the env var.
    let (code, v) = run_json(&[
        "membership",
        "--fixture",
        path.to_str().unwrap(),
        "--class",
        "1,1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["fixture"], "custom-k3");
    assert_eq!(v["ample"], true);

    // Name lookup through HKCONES_FIXTURE_DIR. Set the variable once and
    // keep it for the rest of the process; tests in this binary that do
    // not use it are unaffected.
    std::env::set_var("HKCONES_FIXTURE_DIR", dir.path());
    let (code, v) = run_json(&["membership", "--fixture", "custom-k3", "--class", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["fixture"], "custom-k3");
    let (code, v) = run_json(&["fixtures"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v["fixtures"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert!(names.contains(&"custom-k3"));
    assert!(names.contains(&"hilb2-s1"));
    std::env::remove_var("HKCONES_FIXTURE_DIR");
}

#[test]
fn ampk_and_dual_reports() {
    let (code, v) = run_json(&["ampk", "--fixture", "hilb2-s1", "--k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["cone"]["lo"], serde_json::json!(["1", "-1"]));
    assert_eq!(v["cone"]["hi"], serde_json::json!(["1", "0"]));

    let (code, v) = run_json(&["dual", "--fixture", "hilb2-s1", "--cone", "mov"]);
    assert_eq!(code, 0);
    assert_eq!(v["pairing"], "bbf");
    assert_eq!(v["dual"]["lo"], serde_json::json!(["1", "-1"]));
    assert_eq!(v["dual"]["hi"], serde_json::json!(["0", "1"]));
}

#[test]
fn destab_irrational_scalar_shape() {
    let (code, v) = run_json(&[
        "destab",
        "--fixture",
        "fano-cubic-scroll",
        "--class",
        "4,-2",
        "--ample",
        "1,0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["jumps"][0]["lambda"], "2/9");
    let exit = &v["boundary_lambda"];
    assert_eq!(exit["a"], "2");
    assert_eq!(exit["b"], "-2/3");
    assert_eq!(exit["m"], 6);
    assert!(exit["approx"].is_number());
}

#[test]
fn mori_report() {
    let (code, v) = run_json(&["mori", "--fixture", "fano-cubic-scroll", "--class", "4,-2"]);
    assert_eq!(code, 0);
    assert_eq!(v["face_rays"][0], serde_json::json!(["17", "-9"]));
    assert_eq!(v["face_rays"][1], serde_json::json!(["7", "-3"]));

    let (code, v) = run_json(&["mori", "--fixture", "hilb2-s1", "--class", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["face_rays"], serde_json::json!([["1", "0"]]));
    assert_eq!(v["exceptional_generators"], serde_json::json!(["E"]));
}

#[test]
fn walk_report() {
    let (code, v) = run_json(&["walk", "--fixture", "fano-cubic-scroll", "--class", "20,-11"]);
    assert_eq!(code, 0);
    let walls: Vec<&str> = v["crossed"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["wall"].as_str().unwrap())
        .collect();
    assert_eq!(walls, ["a3", "a2", "a1"]);
}
