//! End-to-end tests of the binary: exit codes and byte-stable output.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nhca"))
}

fn tmp(name: &str, content: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, content).unwrap();
    p
}

fn stdout(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).unwrap()
}

const C5: &str = "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n";
const C4: &str = "4 4\n0 1\n1 2\n2 3\n0 3\n";
const K23: &str = "5 6\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n";

#[test]
fn recognize_c5_yields_the_pinned_model() {
    let p = tmp("c5.txt", C5);
    let out = bin().arg("recognize").arg(&p).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "{\"answer\":\"model\",\"model\":{\"arcs\":[\
         {\"ccw\":\"3/10\",\"cw\":\"3/5\",\"v\":0},\
         {\"ccw\":\"1/10\",\"cw\":\"2/5\",\"v\":1},\
         {\"ccw\":\"9/10\",\"cw\":\"1/5\",\"v\":2},\
         {\"ccw\":\"7/10\",\"cw\":\"1/1\",\"v\":3},\
         {\"ccw\":\"1/2\",\"cw\":\"4/5\",\"v\":4}],\"circle\":1},\
         \"trace\":[\"hole of length 5\",\"companion graph on 9 vertices\",\
         \"circular-arc model\"]}\n"
    );
}

#[test]
fn recognize_k23_yields_the_pinned_witness() {
    let p = tmp("k23.txt", K23);
    let out = bin().arg("recognize").arg(&p).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        stdout(&out),
        "{\"answer\":\"forbidden\",\"forbidden\":{\"apex\":null,\"family\":\"K23\",\
         \"hole\":[],\"vertices\":[0,1,2,3,4]},\
         \"trace\":[\"hole of length 4\",\"hole projection: K23\"]}\n"
    );
}

#[test]
fn missing_file_exits_2() {
    let out = bin().arg("recognize").arg("def-not-here.txt").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stdin_dash_reads_standard_input() {
    let mut child = bin()
        .args(["recognize", "-", "--format", "text"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(K23.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "forbidden: K23\n  vertices: 0 1 2 3 4\n");
}

#[test]
fn dot_output_draws_the_witness() {
    let p = tmp("k23-dot.txt", K23);
    let out = bin().args(["recognize", "--format", "dot"]).arg(&p).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let s = stdout(&out);
    assert!(s.starts_with("graph obstruction {\n  label=\"K23\";\n"));
    assert!(s.contains("  0 -- 2;\n") && s.ends_with("}\n"));
}

#[test]
fn verify_accepts_own_certificate_and_flags_tampering() {
    let g = tmp("c4.txt", C4);
    let cert = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("c4-cert.json");
    let out = bin().arg("recognize").arg(&g).arg("--out").arg(&cert).output().unwrap();
    assert_eq!(out.status.code(), Some(0));

    let out = bin().arg("verify").arg(&g).arg(&cert).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "ok\n");

    // Merge two endpoints; the checker must call out the duplicate.
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    let arcs = doc["model"]["arcs"].as_array_mut().unwrap();
    arcs[1]["ccw"] = arcs[0]["cw"].clone();
    let bad = tmp("c4-bad.json", &doc.to_string());
    let out = bin().arg("verify").arg(&g).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("duplicate endpoint"));

    let garbage = tmp("c4-garbage.json", "not json");
    let out = bin().arg("verify").arg(&g).arg(&garbage).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_is_seed_stable_and_parseable() {
    let run = || bin().args(["gen", "--seed", "7", "--count", "3", "--nmax", "9"]).output().unwrap();
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.matches("---\n").count(), 2);
    for part in text.split("---\n") {
        nhca_core::parse_graph(part).unwrap();
    }
}

#[test]
fn diff_run_agrees_and_rejects_big_nmax() {
    let out = bin().args(["diff", "--seed", "7", "--count", "60", "--nmax", "7"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out), "60/60 agree\n");

    let out = bin().args(["diff", "--seed", "1", "--nmax", "11"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
