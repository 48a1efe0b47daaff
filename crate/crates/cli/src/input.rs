use std::fs;

use uniratio::families::FamilyParams;
use uniratio::family::validate_spec;
use uniratio::{FamilySpec, RawSpec};

use crate::args::InputArgs;
use crate::Failure;

pub enum Input {
    Spec(FamilySpec),
    Family(FamilyParams),
}

/// Inline JSON if the argument looks like an object, otherwise a file path.
fn json_text(arg: &str) -> Result<String, Failure> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::input(format!("cannot read {arg}: {e}")))
    }
}

pub fn parse_spec(arg: &str) -> Result<FamilySpec, Failure> {
    let raw: RawSpec = serde_json::from_str(&json_text(arg)?)
        .map_err(|e| Failure::input(format!("malformed spec JSON: {e}")))?;
    Ok(validate_spec(raw)?)
}

pub fn parse_family(arg: &str) -> Result<FamilyParams, Failure> {
    let params: FamilyParams = serde_json::from_str(&json_text(arg)?)
        .map_err(|e| Failure::input(format!("malformed family JSON: {e}")))?;
    params.validate()?;
    Ok(params)
}

pub fn read(args: &InputArgs) -> Result<Input, Failure> {
    match (&args.spec, &args.family) {
        (Some(s), None) => Ok(Input::Spec(parse_spec(s)?)),
        (None, Some(f)) => Ok(Input::Family(parse_family(f)?)),
        _ => Err(Failure::input("exactly one of --spec and --family is required")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_and_file_input() {
        let s = parse_spec(r#"{"k":0,"l":0,"a":[3],"b":[1]}"#).unwrap();
        assert_eq!(s.a(), &[3]);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("spec.json");
        fs::write(&path, r#"{"k":1,"l":0,"a":[0,1],"b":[1]}"#).unwrap();
        assert_eq!(parse_spec(path.to_str().unwrap()).unwrap().k(), 1);
    }

    #[test]
    fn bad_input_is_an_input_error() {
        for bad in [
            r#"{"k":0,"l":0,"a":[3]}"#,
            r#"{"k":0,"l":0,"a":[3],"b":[0]}"#,
            r#"{"k":0,"l":0,"a":[3],"b":[1],"c":1}"#,
            "/nonexistent/spec.json",
        ] {
            assert_eq!(parse_spec(bad).err().unwrap().code, 1, "{bad}");
        }
        assert_eq!(parse_family(r#"{"family":"S","a":1,"b":3}"#).err().unwrap().code, 1);
    }
}
