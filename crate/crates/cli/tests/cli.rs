use std::fs;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superengel")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["validate", "corpus:shestakov-alt"])), 0);
    assert_eq!(code(&run(&["engel", "corpus:upper-tri(3,010)"])), 0);
    assert_eq!(code(&run(&["engel", "corpus:shestakov-alt"])), 1);
    assert_eq!(code(&run(&["chain", "corpus:shestakov-alt"])), 1);
    assert_eq!(code(&run(&["chain", "corpus:grassmann-aug(2)"])), 0);
    assert_eq!(code(&run(&["validate", "corpus:no-such-thing"])), 2);
    assert_eq!(code(&run(&["validate", "/nonexistent/file.json"])), 2);
    assert_eq!(code(&run(&["engel", "corpus:shestakov-alt", "--full", "--backend", "symbolic"])), 2);
    assert_eq!(code(&run(&["search", "--field", "Q"])), 2);
    assert_eq!(code(&run(&["search", "--budget", "10"])), 2);
}

#[test]
fn malformed_file_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\"field\": \"GF3\"}").unwrap();
    let o = run(&["classify", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn emit_parse_emit_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    for spec in ["shestakov-alt", "m11(GF3)", "grassmann-aug(3)", "upper-tri(4,0110)", "plus-of(m11(GF3))"] {
        let first = dir.path().join("first.json");
        assert_eq!(code(&run(&["corpus", "emit", spec, "-o", first.to_str().unwrap()])), 0);
        let a = superengel::format::parse_algebra(&fs::read_to_string(&first).unwrap()).unwrap();
        assert_eq!(superengel::format::algebra_to_string(&a), fs::read_to_string(&first).unwrap(), "{spec}");
        let printed = stdout(&run(&["corpus", "emit", spec]));
        assert_eq!(printed, fs::read_to_string(&first).unwrap());
        assert_eq!(code(&run(&["validate", first.to_str().unwrap()])), 0);
    }
}

#[test]
fn classify_report_is_written() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&["classify", "corpus:shestakov-alt", "--json", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("graded_nil: true (index 2)"));
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["report"]["summary"]["nilpotent"], false);
    assert!(doc["input"]["digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = TempDir::new().unwrap();
    let cert = dir.path().join("c.json");
    assert_eq!(code(&run(&["chain", "corpus:upper-tri(3,010)", "--json", cert.to_str().unwrap()])), 0);
    assert_eq!(code(&run(&["verify-certificate", "corpus:upper-tri(3,010)", cert.to_str().unwrap()])), 0);
    assert_eq!(code(&run(&["verify-certificate", "corpus:upper-tri(4,0110)", cert.to_str().unwrap()])), 1);
    let text = fs::read_to_string(&cert).unwrap();
    let tampered = text.replacen("\"algebra_index\": 3", "\"algebra_index\": 4", 1);
    assert!(tampered != text);
    fs::write(&cert, tampered).unwrap();
    let o = run(&["verify-certificate", "corpus:upper-tri(3,010)", cert.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("algebra_index"));
}

#[test]
fn pipeline_and_qideal_commands() {
    let dir = TempDir::new().unwrap();
    let j = dir.path().join("j.json");
    fs::write(&j, "[[\"0\", \"1\", \"0\", \"0\"]]").unwrap();
    assert_eq!(code(&run(&["jordan-pipeline", "corpus:m11", j.to_str().unwrap()])), 0);
    fs::write(&j, "[[\"1\", \"0\", \"0\", \"0\"], [\"0\", \"1\", \"0\", \"0\"], [\"0\", \"0\", \"1\", \"0\"], [\"0\", \"0\", \"0\", \"1\"]]").unwrap();
    let o = run(&["jordan-pipeline", "corpus:m11", j.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("failed at stage 2"));
    let i = dir.path().join("i.json");
    fs::write(&i, "[[\"1\", \"0\", \"0\"]]").unwrap();
    assert_eq!(code(&run(&["qideal", "corpus:shestakov-alt", i.to_str().unwrap(), "--v", "0,1,0"])), 0);
    fs::write(&i, "[[\"1\", \"0\", \"0\"], [\"0\", \"1\", \"0\"]]").unwrap();
    assert_eq!(code(&run(&["qideal", "corpus:shestakov-alt", i.to_str().unwrap(), "--v", "0,0,1"])), 1);
    assert_eq!(code(&run(&["qideal", "corpus:shestakov-alt", i.to_str().unwrap(), "--v", "1,1,0"])), 2);
}
