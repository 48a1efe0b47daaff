//! The checked-in transcription of the table of limit points.

use serde::Deserialize;

use uniratio::families::{FamilyName, FamilyParams};

use crate::Failure;

const DATA: &str = include_str!("../data/table2.csv");

#[derive(Debug, Clone, Deserialize)]
struct Record {
    row: String,
    label: String,
    family: Option<String>,
    a: Option<u32>,
    b: Option<u32>,
    epsilon: Option<i32>,
    measure: String,
    lc: String,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub row: String,
    pub label: String,
    /// `None` for rows given only by a coefficient-sign sequence.
    pub params: Option<FamilyParams>,
    /// Printed values, kept as text to preserve every printed digit.
    pub measure: String,
    pub lc: String,
}

fn family_name(s: &str) -> Result<FamilyName, Failure> {
    match s {
        "P" => Ok(FamilyName::P),
        "Q" => Ok(FamilyName::Q),
        "R" => Ok(FamilyName::R),
        "S" => Ok(FamilyName::S),
        other => Err(Failure::input(format!("unknown family {other:?} in table data"))),
    }
}

pub fn rows() -> Result<Vec<Row>, Failure> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(DATA.as_bytes());
    reader
        .deserialize::<Record>()
        .map(|r| {
            let r = r.map_err(|e| Failure::input(format!("table data: {e}")))?;
            let params = match (r.family.as_deref(), r.a, r.b) {
                (Some(f), Some(a), Some(b)) => {
                    let name = family_name(f)?;
                    let p = match name {
                        FamilyName::S => FamilyParams::s(a, b, r.epsilon.unwrap_or(0)),
                        _ => FamilyParams::pqr(name, a, b),
                    };
                    p.validate()?;
                    Some(p)
                }
                _ => None,
            };
            Ok(Row { row: r.row, label: r.label, params, measure: r.measure, lc: r.lc })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transcription_loads() {
        let rows = rows().unwrap();
        assert_eq!(rows.len(), 41);
        assert_eq!(rows[0].label, "P(2,3)");
        assert_eq!(rows[0].params.unwrap().label(), "P(2,3)");
        let skipped: Vec<&str> =
            rows.iter().filter(|r| r.params.is_none()).map(|r| r.row.as_str()).collect();
        assert_eq!(skipped, ["3", "20", "45"]);
        for r in &rows {
            if let Some(p) = r.params {
                assert_eq!(p.label(), r.label);
            }
            assert!(r.measure.parse::<f64>().is_ok() && r.lc.parse::<f64>().is_ok());
        }
    }
}
