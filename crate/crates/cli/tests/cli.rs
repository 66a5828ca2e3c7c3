use std::process::{Command, Output};

use calogero_cli::output::render_json;
use serde_json::Value;

fn calogero(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_calogero"))
        .args(args)
        .env_remove("CALOGERO_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn delta1_reports_both_routes() {
    let out = calogero(&["delta1", "--rank", "1", "--m", "1", "--kappa", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["d1"]["exact"], "20");
    assert_eq!(v["routes"]["closed"]["exact"], "20");
    assert_eq!(v["agree"], true);
    assert_eq!(v["provenance"].as_array().unwrap().len(), 2);
    assert_eq!(v["inputs"]["kappa"], "2");
}

#[test]
fn closed_second_order_is_flagged() {
    let out = calogero(&["delta2", "--m", "0", "--kappa", "3", "--form", "closed"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["d2"]["exact"], "4293/5");
    assert_eq!(v["recurrence"]["exact"], "693/5");
    assert!(v["flag"].as_str().unwrap().starts_with("as-printed; inconsistent"));
    let canonical = json(&calogero(&["delta2", "--m", "0", "--kappa", "3"]));
    assert_eq!(canonical["d2"]["exact"], "693/5");
}

#[test]
fn printed_pole_is_a_usage_error() {
    let out = calogero(&["delta2", "--m", "0", "--kappa", "2", "--form", "closed"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("pole"));
}

#[test]
fn malformed_input_exits_two() {
    assert_eq!(calogero(&["delta1", "--m", "1", "--kappa", "0.5"]).status.code(), Some(2));
    assert_eq!(calogero(&["coeffs", "--m", "1,0", "--rank", "3", "--kappa", "2"]).status.code(), Some(2));
    assert_eq!(calogero(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(calogero(&["delta2", "--m", "0,0", "--kappa", "2"]).status.code(), Some(2));
}

#[test]
fn lattice_non_convergence_exits_three() {
    let out = calogero(&["weier", "--z", "0.7", "--g", "0.05", "--oracle", "--cutoff", "64"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn coefficient_suite_passes() {
    let out = calogero(&["verify", "--suite", "coefficients"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS criterion 1"));
}

#[test]
fn json_round_trips_and_is_deterministic() {
    let args = ["energy", "--m", "2", "--kappa", "5/2", "--g", "0.001,0.01"];
    let a = calogero(&args);
    let b = calogero(&args);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(render_json(&v), text);
    assert_eq!(v["e_trig"]["exact"], "81/4");
    assert_eq!(v["e_trig"]["float"].to_string(), "2.0250000000000000e+1");
    assert_eq!(v["values"].as_array().unwrap().len(), 2);
}

#[test]
fn coefficient_dump() {
    let v = json(&calogero(&["coeffs", "--rank", "2", "--m", "1,0", "--kappa", "5/2", "--dump"]));
    assert_eq!(v["agree"], true);
    assert_eq!(v["polynomial"]["partition"], serde_json::json!([1]));
    assert_eq!(v["up"].as_array().unwrap().len(), 3);
    let direct = json(&calogero(&["coeffs", "--rank", "2", "--m", "1,0", "--kappa", "5/2"]));
    assert_eq!(v["a_m"], direct["a_m"]);
    assert!(direct.get("polynomial").is_none());
}

#[test]
fn oracle_csv_table() {
    let out = calogero(&["oracle", "--kappa", "3", "--levels", "0", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# calogero-oracle-csv v1");
    assert_eq!(lines[1], "m,g,E_num,E_pert,residual,ratio");
    assert_eq!(lines.len(), 4);
    let ratio: f64 = lines[3].rsplit(',').next().unwrap().parse().unwrap();
    assert!((6.0..=10.0).contains(&ratio));
}

#[test]
fn output_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_calogero"))
        .args(["weier", "--z", "0.7", "--g", "0.05", "--oracle", "--out", "weier.json"])
        .env("CALOGERO_OUT_DIR", dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("weier.json")).unwrap()).unwrap();
    let rec = &v["records"][0];
    assert!(rec["difference"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn config_file_supplies_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "rank = 2\nm = \"0,0\"\nkappa = \"2\"\n").unwrap();
    let v = json(&calogero(&["delta1", "--config", path.to_str().unwrap()]));
    assert_eq!(v["d1"]["exact"], "336/5");
}
