use calogero_web::{delta1_table_json, levels_json, weierstrass_json};
use serde_json::Value;

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.unwrap()).unwrap()
}

#[test]
fn weierstrass_curve_and_checkpoints() {
    let v = parse(weierstrass_json(0.05, 40, 64));
    assert_eq!(v["z"].as_array().unwrap().len(), 64);
    for c in v["checkpoints"].as_array().unwrap() {
        assert!(c["difference"].as_f64().unwrap() < 1e-9);
    }
    let flat = parse(weierstrass_json(0.0, 10, 16));
    assert_eq!(flat["series"], flat["trig"]);
    assert!(weierstrass_json(1.5, 10, 16).is_err());
}

#[test]
fn levels_track_the_expansion() {
    let v = parse(levels_json("3", 3, 0.01, 5));
    let num = &v["numeric"][0];
    let pert = &v["second_order"][0];
    for i in 0..5 {
        let d = (num[i].as_f64().unwrap() - pert[i].as_f64().unwrap()).abs();
        assert!(d < 1e-3, "{d}");
    }
    assert!(levels_json("0", 2, 0.01, 5).is_err());
    assert!(levels_json("1/2", 2, 0.9, 5).is_err());
}

#[test]
fn delta1_table_routes_agree() {
    let v = parse(delta1_table_json(2, "2", 3));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    for r in rows {
        assert_eq!(r["generic"], r["closed"]);
    }
    let first = rows.iter().find(|r| r["m"] == serde_json::json!([0, 0])).unwrap();
    assert_eq!(first["generic"], "336/5");
    assert!(delta1_table_json(5, "2", 1).is_err());
    assert!(delta1_table_json(1, "0.5", 1).is_err());
}
