//! JSON helpers shared by the code and decoder file formats.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ff::Field;
use crate::galg::AbelianGroup;

/// Current version of every file format.
pub const FORMAT_VERSION: u64 = 1;

pub fn field_to_json(f: &Field) -> Value {
    json!({ "p": f.p(), "d": f.d(), "modulus": f.modulus() })
}

pub fn field_from_json(v: &Value) -> Result<Arc<Field>> {
    let p = get_u64(v, "p")?;
    let d = get_u64(v, "d")? as usize;
    let modulus = match v.get("modulus") {
        None | Some(Value::Null) => None,
        Some(m) => Some(u64_list(m, "modulus")?),
    };
    Field::new(p, d, modulus)
}

pub fn group_to_json(g: &AbelianGroup) -> Value {
    json!({ "invariant_factors": g.invariant_factors() })
}

pub fn group_from_json(v: &Value) -> Result<AbelianGroup> {
    let factors = v
        .get("invariant_factors")
        .ok_or_else(|| Error::Parse("group is missing \"invariant_factors\"".into()))?;
    let factors: Vec<usize> = u64_list(factors, "invariant_factors")?.into_iter().map(|x| x as usize).collect();
    if factors.is_empty() {
        Ok(AbelianGroup::trivial())
    } else {
        AbelianGroup::new(factors)
    }
}

pub fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing \"{key}\"")))
}

pub fn get_u64(v: &Value, key: &str) -> Result<u64> {
    get(v, key)?
        .as_u64()
        .ok_or_else(|| Error::Parse(format!("\"{key}\" must be a non-negative integer")))
}

/// An optional integer: absent or `null` gives `None`.
pub fn get_opt_i64(v: &Value, key: &str) -> Result<Option<i64>> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(x) => x.as_i64().map(Some).ok_or_else(|| Error::Parse(format!("\"{key}\" must be an integer or null"))),
    }
}

pub fn check_version(v: &Value) -> Result<()> {
    match get_u64(v, "version")? {
        FORMAT_VERSION => Ok(()),
        other => Err(Error::Parse(format!("unsupported format version {other}"))),
    }
}

fn u64_list(v: &Value, what: &str) -> Result<Vec<u64>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("\"{what}\" must be a list")))?
        .iter()
        .map(|x| x.as_u64().ok_or_else(|| Error::Parse(format!("\"{what}\" entries must be non-negative integers"))))
        .collect()
}

/// Canonical text form: pretty-printed with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialise");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}
