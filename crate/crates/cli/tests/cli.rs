use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equicode"))
        .current_dir(dir)
        .env_remove("EQUICODE_SEED")
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> Output {
    let out = run(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn write_json(path: &Path, v: &Value) {
    std::fs::write(path, serde_json::to_string(v).unwrap()).unwrap();
}

/// RS [12, 6] over F13 with its decoder, and an encoded message.
fn rs_setup(dir: &Path) -> Vec<i64> {
    ok(dir, &["gen", "rs", "--p", "13", "--n", "12", "--deg", "5", "--out", "rs.json", "--decoder-out", "rsd.json"]);
    let msg = vec![1, 2, 3, 4, 5, 6];
    write_json(&dir.join("m.json"), &json!(msg.iter().map(|&x| vec![x]).collect::<Vec<_>>()));
    ok(dir, &["code", "encode", "--code", "rs.json", "--message", "m.json", "--out", "c.json"]);
    msg
}

fn corrupt(dir: &Path, from: &str, to: &str, positions: &[usize]) {
    let mut v = read_json(&dir.join(from));
    for (n, &j) in positions.iter().enumerate() {
        let x = v["vector"][j][0].as_i64().unwrap();
        v["vector"][j][0] = json!((x + 1 + n as i64) % 13);
    }
    write_json(&dir.join(to), &v);
}

#[test]
fn mul_examples() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    assert_eq!(stdout(&ok(d, &["mul", "--p", "13", "--group", "1", "--a", "3", "--b", "4"])).trim(), "[12]");
    let out = ok(d, &["mul", "--p", "3", "--group", "4", "--a", "1,1,0,0", "--b", "[1,1,0,0]", "--method", "both"]);
    assert_eq!(stdout(&out), "agree: true\n[1,2,1,0]\n");
    let out = run(d, &["mul", "--p", "3", "--group", "4", "--a", "1,1,0", "--b", "1,1,0,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("parse error"));
    // an element file written by --out reads back
    ok(d, &["mul", "--p", "5", "--group", "2x2", "--a", "1,2,3,4", "--b", "0,1,0,0", "--out", "prod.json"]);
    let again = ok(d, &["mul", "--p", "5", "--group", "2x2", "--a", "prod.json", "--b", "1,0,0,0", "--method", "naive"]);
    assert_eq!(stdout(&again).trim(), "[2,1,4,3]");
}

#[test]
fn fixture_validate_encode_interpolate() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(d, &["gen", "fixture", "--out", "fx.json"]);
    let out = ok(d, &["code", "validate", "--code", "fx.json"]);
    assert!(stderr(&out).contains("warning: degree window"));
    assert!(stdout(&out).contains("expanded_rank=4"));
    write_json(&d.join("m.json"), &json!({"version": 1, "vector": [[1, 0, 0, 0]]}));
    ok(d, &["code", "encode", "--code", "fx.json", "--message", "m.json", "--out", "c.json"]);
    assert_eq!(read_json(&d.join("c.json"))["vector"], json!([[1, 0, 0, 0], [1, 2, 2, 2], [2, 2, 2, 1]]));
    let out = ok(d, &["code", "check", "--code", "fx.json", "--received", "c.json"]);
    assert!(stderr(&out).contains("codeword: true"));
    ok(d, &["code", "interpolate", "--code", "fx.json", "--received", "c.json", "--out", "back.json"]);
    assert_eq!(read_json(&d.join("back.json"))["vector"], json!([[1, 0, 0, 0]]));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(d, &["gen", "fixture", "--out", "fx.json"]);
    let mut v = read_json(&d.join("fx.json"));
    v["E"]["entries"][1][1] = json!(1);
    write_json(&d.join("bad.json"), &v);
    assert_eq!(run(d, &["code", "validate", "--code", "bad.json"]).status.code(), Some(2));

    rs_setup(d);
    corrupt(d, "c.json", "r5.json", &[0, 1, 2, 3, 4]);
    assert_eq!(run(d, &["code", "interpolate", "--code", "rs.json", "--received", "r5.json"]).status.code(), Some(3));
    let out = run(d, &["--json-errors", "code", "interpolate", "--code", "rs.json", "--received", "r5.json"]);
    let err: Value = serde_json::from_str(stderr(&out).trim()).unwrap();
    assert_eq!((err["error"].as_str(), err["exit_code"].as_i64()), (Some("NotInImage"), Some(3)));
    // beyond the radius the decoder gives up (or, rarely, lands on another codeword)
    let out = run(d, &["decode", "--decoder", "rsd.json", "--received", "r5.json"]);
    assert!(matches!(out.status.code(), Some(0) | Some(4)));
    assert_eq!(run(d, &["gen", "split", "--p", "3", "--group", "3", "--n", "4", "--k", "2"]).status.code(), Some(1));
    assert_eq!(run(d, &["no-such-command"]).status.code(), Some(1));
}

#[test]
fn decode_three_errors_and_clean_word() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let msg = rs_setup(d);
    corrupt(d, "c.json", "r.json", &[0, 5, 9]);
    let out = ok(d, &["decode", "--decoder", "rsd.json", "--received", "r.json", "--out", "dec.json", "--trace"]);
    assert!(stderr(&out).contains("trace: error weight=3"));
    let dec = read_json(&d.join("dec.json"));
    assert_eq!(dec["message"], json!(msg.iter().map(|&x| vec![x]).collect::<Vec<_>>()));
    assert_eq!(dec["codeword"], read_json(&d.join("c.json"))["vector"]);

    let out = ok(d, &["decode", "--decoder", "rsd.json", "--received", "c.json", "--trace"]);
    assert!(stderr(&out).contains("fast path"));
}

#[test]
fn files_round_trip_byte_identically() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    rs_setup(d);
    ok(d, &["gen", "split", "--p", "5", "--group", "4", "--n", "4", "--k", "2", "--seed", "1", "--out", "sp.json"]);
    ok(d, &["code", "validate", "--code", "sp.json"]);
    for file in ["rs.json", "sp.json"] {
        let text = std::fs::read_to_string(d.join(file)).unwrap();
        let code = equicode::EquivariantCode::from_text(&text).unwrap();
        assert_eq!(code.to_text(), text, "{file}");
    }
    let text = std::fs::read_to_string(d.join("rsd.json")).unwrap();
    assert_eq!(equicode::DecoderData::from_text(&text, None).unwrap().to_text(), text);
    // a written vector file is re-read and re-written unchanged
    ok(d, &["code", "interpolate", "--code", "rs.json", "--received", "c.json", "--out", "m2.json"]);
    ok(d, &["code", "encode", "--code", "rs.json", "--message", "m2.json", "--out", "c2.json"]);
    assert_eq!(std::fs::read(d.join("c.json")).unwrap(), std::fs::read(d.join("c2.json")).unwrap());
}

#[test]
fn seeds_determine_outputs() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let gen = |seed: &str, out: &str| {
        ok(d, &["--seed", seed, "gen", "split", "--p", "13", "--group", "2x6", "--n", "3", "--k", "1", "--out", out]);
        std::fs::read(d.join(out)).unwrap()
    };
    assert_eq!(gen("7", "a.json"), gen("7", "b.json"));
    assert_ne!(gen("7", "a.json"), gen("8", "c.json"));
    let env = Command::new(env!("CARGO_BIN_EXE_equicode"))
        .current_dir(d)
        .env("EQUICODE_SEED", "7")
        .args(["gen", "split", "--p", "13", "--group", "2x6", "--n", "3", "--k", "1", "--out", "e.json"])
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&env.stderr).contains("seed: 7"));
    assert_eq!(std::fs::read(d.join("e.json")).unwrap(), gen("7", "a.json"));

    rs_setup(d);
    corrupt(d, "c.json", "r.json", &[2, 3, 11]);
    let decode = |threads: &str| {
        let out = ok(d, &["--seed", "3", "--threads", threads, "decode", "--decoder", "rsd.json", "--received", "r.json", "--trace"]);
        (out.stdout, out.stderr)
    };
    let one = decode("1");
    assert_eq!(one, decode("1"));
    assert_eq!(one, decode("4"));
}

#[test]
fn bench_csv() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(d, &["bench-mul", "--p", "257", "--sizes", "", "--out", "empty.csv"]);
    assert_eq!(std::fs::read_to_string(d.join("empty.csv")).unwrap(), "group_order,method,median_ns,ops_per_element\n");
    ok(d, &["bench-mul", "--p", "257", "--sizes", "64,128", "--reps", "2", "--threads", "2", "--out", "b.csv"]);
    let text = std::fs::read_to_string(d.join("b.csv")).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!((rows[0][0], rows[0][1], rows[1][1]), ("64", "naive", "fast"));
    // naive: o multiplications and o accumulations per coefficient
    assert_eq!(rows[0][3], "128.000");
    let out = ok(d, &["bench-mul", "--p", "3", "--group-family", "elementary2", "--sizes", "8", "--reps", "1"]);
    assert_eq!(stdout(&out).lines().count(), 3);
}
