//! Reading and writing the JSON artifacts.

use std::path::Path;
use std::sync::Arc;

use anyhow::Context;
use equicode::{io, AbelianGroup, EquivariantCode, Error, GroupAlgebra, GroupAlgebraElement};
use serde_json::{json, Value};

pub fn read_text(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn write_text(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Pretty JSON to `out`, or to stdout.
pub fn write_or_print(out: Option<&Path>, v: &Value) -> anyhow::Result<()> {
    let text = io::to_text(v);
    match out {
        Some(path) => write_text(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn read_code(path: &Path) -> anyhow::Result<EquivariantCode> {
    let text = read_text(path)?;
    EquivariantCode::from_text(&text).with_context(|| format!("loading code {}", path.display()))
}

/// `{"version": 1, "vector": [...]}`.
pub fn vector_json(code: &EquivariantCode, v: &[GroupAlgebraElement]) -> Value {
    json!({ "version": io::FORMAT_VERSION, "vector": code.vector_to_json(v) })
}

/// A vector file: the versioned object above, or a bare list of elements.
pub fn read_vector(code: &EquivariantCode, path: &Path) -> anyhow::Result<Vec<GroupAlgebraElement>> {
    let v = io::parse(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let list = match &v {
        Value::Object(_) => {
            io::check_version(&v)?;
            io::get(&v, "vector")?
        }
        other => other,
    };
    code.vector_from_json(list).with_context(|| format!("reading {}", path.display()))
}

/// `4`, `2x6`, `2,6`; `1` or an empty string is the trivial group.
pub fn parse_group(s: &str) -> Result<AbelianGroup, Error> {
    let factors = s
        .split(['x', ',', '*'])
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad group factor {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let factors: Vec<usize> = factors.into_iter().filter(|&f| f != 1).collect();
    if factors.is_empty() {
        Ok(AbelianGroup::trivial())
    } else {
        AbelianGroup::new(factors)
    }
}

/// An element from a file (`{"version":1,"element":[...]}` or a bare list)
/// or inline (`1,2,0` or a JSON list).
pub fn parse_element(alg: &Arc<GroupAlgebra>, arg: &str) -> anyhow::Result<GroupAlgebraElement> {
    let path = Path::new(arg);
    let v = if path.is_file() {
        let v = io::parse(&read_text(path)?)?;
        match v.get("element") {
            Some(e) => {
                io::check_version(&v)?;
                e.clone()
            }
            None => v,
        }
    } else if arg.trim_start().starts_with('[') {
        io::parse(arg)?
    } else {
        let items = arg
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad coefficient {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        json!(items)
    };
    Ok(alg.from_json(&v)?)
}
