use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use calogero::coupling::to_f64;
use calogero::Rational;
use serde_json::{Map, Number, Value};

use crate::config::OUT_DIR_ENV;

pub const SCHEMA: &str = "calogero/1";
pub const ORACLE_CSV_HEADER: &str = "m,g,E_num,E_pert,residual,ratio";
pub const ORACLE_CSV_VERSION: &str = "# calogero-oracle-csv v1";
pub const WEIER_CSV_HEADER: &str = "z,g,value,tail_bound,oracle_value";
pub const WEIER_CSV_VERSION: &str = "# calogero-weier-csv v1";

/// A float with 17 significant digits, or null when not finite.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(Number::from_str(&format_float(x)).expect("formatted float parses"))
}

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// `{"exact": "p/q", "float": …}`
pub fn rational(r: &Rational) -> Value {
    let mut m = Map::new();
    m.insert("exact".into(), Value::String(r.to_string()));
    m.insert("float".into(), float(to_f64(r)));
    Value::Object(m)
}

pub fn object<const K: usize>(pairs: [(&str, Value); K]) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(path) => {
            let path = resolve_out(path);
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(path, text)
        }
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

pub fn csv_float(x: Option<f64>) -> String {
    match x {
        Some(v) if v.is_finite() => format_float(v),
        _ => String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use calogero::coupling::rat;

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        assert_eq!(float(f64::NAN), Value::Null);
    }

    #[test]
    fn rendering_round_trips() {
        let v = object([
            ("b", rational(&rat(336, 5))),
            ("a", float(1.0 / 3.0)),
            ("c", Value::Array(vec![float(-2.5e-300), float(7.0)])),
        ]);
        let text = render_json(&v);
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(render_json(&back), text);
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
        assert!(text.contains("\"336/5\""));
    }
}
