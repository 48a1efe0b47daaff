use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::Value;

use crate::Failure;

/// A real with 17 significant digits, plain decimal when the exponent is
/// moderate. Non-finite values print as `nan`, `inf`, `-inf`.
pub fn real(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..17).contains(&exp) {
        format!("{:.*}", (16 - exp) as usize, v)
    } else {
        format!("{v:.16e}")
    }
}

/// A table with `#` metadata lines and rows of preformatted cells.
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table { metadata: Vec::new(), header, rows: Vec::new() }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.metadata.push((key.to_string(), value.into()));
    }

    pub fn to_csv(&self) -> Result<String, Failure> {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header).map_err(Failure::io)?;
        for row in &self.rows {
            w.write_record(row).map_err(Failure::io)?;
        }
        let bytes = w.into_inner().map_err(|e| Failure::io(e.into_error()))?;
        out.push_str(&String::from_utf8(bytes).expect("csv output is UTF-8"));
        Ok(out)
    }

    /// `{"metadata": {...}, "rows": [{...}]}`; cells that parse as numbers
    /// or booleans are emitted as such, empty cells as null.
    pub fn to_json(&self) -> String {
        let cell = |s: &str| -> Value {
            if s.is_empty() {
                Value::Null
            } else if let Ok(b) = s.parse::<bool>() {
                Value::Bool(b)
            } else if let Ok(i) = s.parse::<i64>() {
                Value::from(i)
            } else if let Some(f) = s.parse::<f64>().ok().filter(|f| f.is_finite()) {
                Value::from(f)
            } else {
                Value::String(s.to_string())
            }
        };
        let metadata: serde_json::Map<String, Value> =
            self.metadata.iter().map(|(k, v)| (k.clone(), cell(v))).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.header.iter().zip(r).map(|(h, v)| (h.to_string(), cell(v))).collect(),
                )
            })
            .collect();
        let doc = serde_json::json!({ "metadata": metadata, "rows": rows });
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(Failure::io),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(real(0.1328095098966884), "0.13280950989668841");
        assert_eq!(real(1.2554338662666087), "1.2554338662666087");
        assert_eq!(real(1.0 / 3.0), "0.33333333333333331");
        assert_eq!(real(0.0), "0");
        assert_eq!(real(42.0), "42.000000000000000");
        assert_eq!(real(1e-9), "1.0000000000000001e-9");
        for v in [0.1328095098966884, 1.0 / 3.0, 2.5e-7, 123456.789, 1e-9] {
            assert_eq!(real(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn csv_and_json() {
        let mut t = Table::new(vec!["m", "lc", "ok"]);
        t.meta("source", "test");
        t.rows.push(vec!["2".into(), real(0.5), "true".into()]);
        t.rows.push(vec!["3".into(), String::new(), "false".into()]);
        let csv = t.to_csv().unwrap();
        assert_eq!(csv, "# source: test\nm,lc,ok\n2,0.50000000000000000,true\n3,,false\n");
        let json: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(json["rows"][0]["lc"], 0.5);
        assert_eq!(json["rows"][1]["lc"], Value::Null);
        assert_eq!(json["rows"][1]["ok"], false);
    }
}
