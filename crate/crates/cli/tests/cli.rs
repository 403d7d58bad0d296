use std::io::Write;
use std::process::{Command, Output, Stdio};

use cliquesparse::generators::{generate, Family, FamilySpec};
use cliquesparse::graph::{are_isomorphic, parse_graph, Format};
use serde_json::Value;
use sha2::{Digest, Sha256};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cliquesparse"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn report(args: &[&str], stdin: &str) -> Value {
    let out = run(args, stdin);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn temp_file(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("cliquesparse-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const P4: &str = "0 1\n1 2\n2 3\n";

#[test]
fn gen_prints_an_edge_list_of_the_member() {
    let out = run(&["gen", "--family", "MKI", "--n", "5"], "");
    assert_eq!(out.status.code(), Some(0));
    let g = parse_graph(std::str::from_utf8(&out.stdout).unwrap(), Format::EdgeList).unwrap();
    assert!(are_isomorphic(&g, &generate(FamilySpec::new(Family::MKI, 5)).unwrap()).unwrap());
}

#[test]
fn gen_can_emit_graph6_and_json() {
    let out = run(&["gen", "--family", "Kn", "--n", "4", "--format", "graph6"], "");
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "C~");
    let r = report(&["gen", "--family", "Q-HKK", "--k", "2", "--n", "2", "--json"], "");
    assert_eq!(r["command"], "gen");
    assert!(r["results"]["n"].as_u64().unwrap() > 0);
}

#[test]
fn params_of_p4() {
    let path = temp_file("p4.el", P4);
    let r = report(&["params", "--input", path.to_str().unwrap()], "");
    assert_eq!(r["schema"], "cliquesparse-report/1");
    assert_eq!(r["command"], "params");
    assert_eq!(r["seed"], Value::Null);
    let digest: String = Sha256::digest(P4.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(r["input_digest"], digest.as_str());
    let res = &r["results"];
    assert_eq!((res["cid"].as_u64(), res["cideg"].as_u64(), res["cdeg"].as_u64()), (Some(2), Some(2), Some(2)));
    assert_eq!(res["inequalities"]["passed"], true);
}

#[test]
fn graph6_is_picked_from_the_extension() {
    let path = temp_file("k4.g6", "C~\n");
    let r = report(&["cliques", "--input", path.to_str().unwrap()], "");
    assert_eq!(r["results"]["count"], 1);
    assert_eq!(r["results"]["cliques"][0].as_array().unwrap().len(), 4);
}

#[test]
fn labels_are_translated_both_ways() {
    let text = "10 20\n20 30\n30 40\n";
    let r = report(&["menger", "--A", "10", "--B", "40", "--k", "1"], text);
    assert_eq!(r["results"]["kind"], "linkage");
    assert_eq!(r["results"]["paths"][0], serde_json::json!(["10", "20", "30", "40"]));
    let r = report(&["menger", "--A", "10", "--B", "40", "--k", "2"], text);
    assert_eq!(r["results"]["kind"], "separator");
    assert_eq!(r["results"]["theta"], 1);
    let q = report(&["quotient"], "5 6\n6 7\n5 7\n7 8\n");
    assert_eq!(q["results"]["classes"][0], serde_json::json!(["5", "6"]));
}

#[test]
fn treewidth_conventions() {
    let r = report(&["tw", "--measure", "card"], P4);
    assert_eq!(r["results"]["width"], 2);
    let r = report(&["tw", "--measure", "card", "--standard"], P4);
    assert_eq!(r["results"]["width"], 1);
    let r = report(&["tw"], "0 1\n1 2\n2 3\n3 0\n");
    assert_eq!(r["results"]["width"], 2);
    assert_eq!(r["results"]["measure"], "alpha");
}

#[test]
fn rankwidth_and_certify() {
    let r = report(&["rankwidth"], "0 1\n1 2\n2 3\n3 4\n4 0\n");
    assert_eq!(r["results"]["width"], 2);
    let akk = String::from_utf8(run(&["gen", "--family", "AKK", "--n", "3"], "").stdout).unwrap();
    let r = report(&["certify", "--k", "3"], &akk);
    assert_eq!(r["results"]["found"], true);
    assert_eq!(r["results"]["order"], 3);
    let r = report(&["certify", "--k", "2"], P4);
    assert_eq!(r["results"]["family"], "MKI");
    let r = report(&["certify", "--k", "2"], "0 1\n1 2\n");
    assert_eq!(r["results"]["found"], false);
}

#[test]
fn vm_check_of_the_half_graph_chain() {
    let r = report(&["vm-check", "--family", "HKK", "--n", "3"], "");
    assert_eq!(r["results"]["passed"], true);
}

#[test]
fn verify_inequalities_passes_and_is_reproducible() {
    let args = ["verify", "--suite", "inequalities", "--seed", "7", "--trials", "1000"];
    let first = run(&args, "");
    assert_eq!(first.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(r["seed"], 7);
    assert_eq!(r["results"]["passed"], true);
    assert_eq!(r["results"]["suites"]["inequalities"]["graphs"], 1000);
    assert_eq!(run(&args, "").stdout, first.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bogus"], "").status.code(), Some(64));
    assert_eq!(run(&["params", "--nope"], P4).status.code(), Some(64));
    assert_eq!(run(&["verify", "--suite", "nope"], "").status.code(), Some(64));
    assert_eq!(run(&["params"], "0 0\n").status.code(), Some(2));
    assert_eq!(run(&["menger", "--A", "9", "--B", "0"], P4).status.code(), Some(2));
    assert_eq!(run(&["gen", "--family", "Nope", "--n", "3"], "").status.code(), Some(2));

    let grid = String::from_utf8(run(&["gen", "--family", "Grid", "--n", "4"], "").stdout).unwrap();
    let out = run(&["rankwidth"], &grid);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exact rankwidth"));
    assert!(out.stdout.is_empty());
}
