use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

use pacs_core::error::Error;
use pacs_core::linalg::float::Mode;
use pacs_core::report::{compare_values, run, to_csv, RunConfig, Status, Suite};

fn config(families: &[&str], suites: &[Suite]) -> RunConfig {
    RunConfig::new(families.iter().map(|s| s.to_string()).collect(), suites.to_vec(), Mode::Exact, Some(1))
}

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/g2_report.json")
}

fn pacs() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pacs"))
}

#[test]
fn usage_errors() {
    assert!(matches!(run(&config(&[], &[Suite::Certify])), Err(Error::Usage(_))));
    assert!(matches!(run(&config(&["G2"], &[])), Err(Error::Usage(_))));
    assert!(matches!(run(&config(&["G7"], &[Suite::Certify])), Err(Error::Usage(_))));
    let mut c = config(&["G2"], &[Suite::Maximality]);
    c.seed = None;
    assert!(matches!(run(&c), Err(Error::Usage(_))));
    assert!(matches!("bogus".parse::<Suite>(), Err(Error::Usage(_))));
}

#[test]
fn g2_all_suites() {
    let r = run(&config(&["G2"], &Suite::ALL)).unwrap();
    assert!(r.passed());
    let t = &r.outcome("G2", Suite::Theorem43).unwrap().result;
    let dims: Vec<u64> =
        ["dim_spencer_image", "dim_harmonic", "dim_lambda3_0", "dim_total"].iter().map(|k| t[k].as_u64().unwrap()).collect();
    assert_eq!(dims, [16, 8, 0, 24]);
    // suites come out in dependency order
    let order: Vec<Suite> = r.families[0].suites.iter().map(|o| o.suite).collect();
    assert_eq!(order, Suite::ALL);
    assert!(r.outcome("G2", Suite::Maximality).unwrap().probabilistic);
    assert_eq!(r.outcome("G2", Suite::Types).unwrap().status, Status::Skipped);
}

#[test]
fn sl_is_not_maximal() {
    let r = run(&config(&["SL:2"], &[Suite::Maximality])).unwrap();
    let o = r.outcome("SL:2", Suite::Maximality).unwrap();
    assert_eq!(o.status, Status::Passed);
    assert!(o.message.as_deref().unwrap().starts_with("non-maximal, intermediate subspace found"));
    assert_eq!(o.result["maximal"], Value::Bool(false));
}

#[test]
fn compare_names_the_changed_path() {
    let r = run(&config(&["SO:3,0"], &[Suite::Prolongation])).unwrap();
    let a = serde_json::to_value(&r).unwrap();
    assert!(compare_values(&a, &a).is_empty());
    let mut b = a.clone();
    b["families"][0]["suites"][0]["result"]["dim_image"] = Value::from(0);
    b["families"][0]["suites"][0]["elapsed_ms"] = Value::from(123456);
    let diffs = compare_values(&a, &b);
    assert_eq!(diffs.len(), 1);
    assert!(diffs[0].starts_with("families[0].suites[0].result.dim_image"), "{diffs:?}");
}

#[test]
fn matches_golden_g2_report() {
    let r = run(&config(&["G2"], &Suite::ALL)).unwrap();
    let golden: Value = serde_json::from_str(&std::fs::read_to_string(golden_path()).unwrap()).unwrap();
    let diffs = compare_values(&serde_json::to_value(&r).unwrap(), &golden);
    assert!(diffs.is_empty(), "{diffs:#?}");
}

#[test]
fn float_mode_skips_large_exact_suites() {
    let mut c = config(&["G2"], &[Suite::Cohomology, Suite::Theorem43]);
    c.mode = Mode::FloatFallback { threshold: 10 };
    let r = run(&c).unwrap();
    let o = r.outcome("G2", Suite::Theorem43).unwrap();
    assert_eq!(o.status, Status::Skipped);
    assert!(r.outcome("G2", Suite::Cohomology).unwrap().approximate);
}

#[test]
fn csv_projection() {
    let r = run(&config(&["G2"], &[Suite::Prolongation])).unwrap();
    let csv = to_csv(&r);
    assert!(csv.starts_with("family,suite,path,value\n"));
    assert!(csv.contains("G2,prolongation,dim_kernel,0\n"));
}

#[test]
fn binary_exit_codes() {
    let dir = std::env::temp_dir().join(format!("pacs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("g2.json");
    let ok = pacs().args(["verify", "--family", "G2", "--seed", "1", "--out"]).arg(&out).status().unwrap();
    assert_eq!(ok.code(), Some(0));
    let same = pacs().args(["compare", "--golden"]).arg(golden_path()).arg("--report").arg(&out).status().unwrap();
    assert_eq!(same.code(), Some(0));

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    v["families"][0]["component_dims"][1] = Value::from(5);
    let flipped = dir.join("flipped.json");
    std::fs::write(&flipped, v.to_string()).unwrap();
    let diff = pacs().args(["compare", "--golden"]).arg(golden_path()).arg("--report").arg(&flipped).output().unwrap();
    assert_eq!(diff.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&diff.stdout).contains("families[0].component_dims[1]"));

    let usage = pacs().args(["verify", "--family", "XX"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let none = pacs().args(["verify"]).output().unwrap();
    assert_eq!(none.status.code(), Some(2));

    let export = dir.join("g2_alg.json");
    let e = pacs().args(["export", "--algebra", "G2", "--out"]).arg(&export).status().unwrap();
    assert_eq!(e.code(), Some(0));
    let doc = pacs_core::lie::json::import_json(&std::fs::read_to_string(&export).unwrap()).unwrap();
    assert_eq!(doc.dim(), 14);
    std::fs::remove_dir_all(&dir).ok();
}
