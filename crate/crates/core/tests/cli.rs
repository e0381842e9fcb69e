//! The `gh` binary end to end: records on stdout, exit codes, trace files.

use std::path::Path;
use std::process::{Command, Output};

use gandy_hyland::gh::{HerbrandWitness, Oracle};
use gandy_hyland::record::{read_json, ResultRecord};
use serde_json::json;

fn gh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn record(out: &Output) -> ResultRecord {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(text.lines().last().expect("one record")).expect("record json")
}

#[test]
fn eval_gh_prints_value() {
    let out = gh(&["eval-gh", "--expr", "f(0)+f(1)", "--seq", ""]);
    assert_eq!(out.status.code(), Some(0));
    let r = record(&out);
    assert_eq!(r.operation, "eval-gh");
    assert_eq!(r.output, Some(json!({ "value": 1 })));
}

#[test]
fn json_file_has_header_and_record() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fan.jsonl");
    let out = gh(&[
        "fan",
        "--fixture",
        "sum01",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let records = read_json(&path).unwrap();
    assert_eq!(records, vec![record(&out)]);
    assert_eq!(records[0].output, Some(json!({ "modulus": 2 })));
}

#[test]
fn exit_codes() {
    assert_eq!(gh(&["eval-gh"]).status.code(), Some(2));
    assert_eq!(gh(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(gh(&["eval-gh", "--expr", "f(0,1)"]).status.code(), Some(2));
    assert_eq!(
        gh(&["stabilize", "--fixture", "const-2", "--nmax", "0"])
            .status
            .code(),
        Some(2)
    );
    let out = gh(&["mu", "--point", "1", "--pad", "1", "--fuel", "1000"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(record(&out).error.unwrap().kind, "FuelExhausted");
    let out = gh(&[
        "g", "--expr", "f(0)", "--seq", "9", "--depth", "3", "--bound", "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = gh(&["scf-check", "--fixture", "const-4", "--tree", "full-3"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

fn write_trace(path: &Path) -> HerbrandWitness {
    let out = gh(&[
        "trace",
        "--fixture",
        "sum01",
        "--seq",
        "1",
        "--trace",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn trace_replays_and_mutation_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.json");
    let w = write_trace(&path);
    let out = gh(&["replay", "--trace", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(record(&out).output.unwrap()["matches"], true);

    let mut bad = w.clone();
    let probes = bad.probes.get_mut(&Oracle::Apply).unwrap();
    probes[0].reads[0].1 += 7;
    std::fs::write(&path, serde_json::to_string(&bad).unwrap()).unwrap();
    let out = gh(&["replay", "--trace", path.to_str().unwrap()]);
    assert_ne!(out.status.code(), Some(0));
    assert_eq!(record(&out).error.unwrap().kind, "OutOfTableQuery");
}

#[test]
fn special_fan_on_constant_two() {
    let out = gh(&["special-fan", "--fixture", "const-2"]);
    assert_eq!(out.status.code(), Some(0));
    let output = record(&out).output.unwrap();
    assert_eq!(output["bound"], 2);
    assert_eq!(output["points"].as_array().unwrap().len(), 4);
}
