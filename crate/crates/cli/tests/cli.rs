use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use kopt_core::io::{read_instance, read_json, read_jsonl, InstanceFile};
use kopt_core::reduction::SparseTsp;
use kopt_core::tsp::{SwapStep, Tour};
use serde_json::Value;

fn kopt(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kopt"))
        .arg("--out")
        .arg(out)
        .args(args)
        .output()
        .expect("spawn kopt")
}

fn report(out: &Path) -> Value {
    read_json(&out.join("report.json")).unwrap()
}

#[test]
fn gen_michel_scott_writes_instance_and_cut() {
    let dir = tempfile::tempdir().unwrap();
    let o = kopt(dir.path(), &["gen", "maxcut", "--family", "michel-scott", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let inst = read_instance(&dir.path().join("instance.json")).unwrap();
    assert_eq!(inst.num_vertices(), 20);
    assert_eq!(inst.max_degree(), 4);
    let text = fs::read_to_string(dir.path().join("instance.json")).unwrap();
    let file: InstanceFile = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&file).unwrap() + "\n", text);
    let cut: Value = read_json(&dir.path().join("cut.json")).unwrap();
    assert_eq!(cut.as_object().unwrap().len(), 20);
}

#[test]
fn flexible_gadget_certifies() {
    let dir = tempfile::tempdir().unwrap();
    let o = kopt(dir.path(), &["verify", "gadget", "--name", "flexible", "--rx", "2", "--ry", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(dir.path())["verdict"], "pass");
}

#[test]
fn wrong_gadget_spec_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = kopt(dir.path(), &["verify", "gadget", "--name", "flexible", "--rx", "4", "--ry", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let r = report(dir.path());
    assert_eq!(r["verdict"], "fail");
    assert!(!r["counterexample"].as_array().unwrap().is_empty());
}

#[test]
fn michel_scott_correspondence_over_fourteen_flips() {
    let dir = tempfile::tempdir().unwrap();
    let o = kopt(
        dir.path(),
        &["verify", "correspondence", "--family", "michel-scott", "--n", "1", "--labeling", "k9", "--k", "9", "--oracle", "sparse"],
    );
    assert_eq!(o.status.code(), Some(0));
    let r = report(dir.path());
    assert_eq!(r["verdict"], "pass");
    let steps = r["report"]["steps"].as_array().unwrap();
    assert_eq!(steps.iter().filter(|s| !s["flipped"].is_null()).count(), 14);
}

#[test]
fn capped_enumeration_is_oracle_limited() {
    let dir = tempfile::tempdir().unwrap();
    let o = kopt(
        dir.path(),
        &["verify", "strictness", "--family", "michel-scott", "--n", "1", "--labeling", "k9", "--cap", "100"],
    );
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(report(dir.path())["verdict"], "oracle-limited");
}

#[test]
fn usage_and_input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(kopt(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(kopt(dir.path(), &["kopt", "--oracle", "4swap"]).status.code(), Some(2));
    fs::write(dir.path().join("bad.json"), "{\"vertices\": [\"a\"]").unwrap();
    let bad = dir.path().join("bad.json");
    let o = kopt(dir.path(), &["flip", "--instance", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.json"));
}

#[test]
fn compiled_artifacts_round_trip_and_kopt_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = ["compile", "--family", "random", "--n", "5", "--seed", "3", "--labeling", "k13", "--completion", "huge"];
    assert_eq!(kopt(d, &args).status.code(), Some(0));
    let text = fs::read_to_string(d.join("tsp.json")).unwrap();
    let tsp: SparseTsp = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&tsp).unwrap() + "\n", text);
    let meta = &serde_json::from_str::<Value>(&text).unwrap()["metadata"];
    assert!(meta["labeling"].is_object() && meta["h"].is_array());

    let tsp_path = d.join("tsp.json");
    let tsp_arg = tsp_path.to_str().unwrap();
    let run = |sub: &str| {
        let out = d.join(sub);
        let o = kopt(&out, &["kopt", "--tsp", tsp_arg, "--oracle", "xchange", "--pivot", "random", "--seed", "9"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        fs::read(out.join("kopt_trace.jsonl")).unwrap()
    };
    assert_eq!(run("a"), run("b"));

    let steps: Vec<SwapStep> = read_jsonl(&d.join("a/kopt_trace.jsonl")).unwrap();
    for w in steps.windows(2) {
        assert_eq!(w[0].weight_after.clone() + &w[1].delta, w[1].weight_after);
    }
    let last: Tour = read_json(&d.join("a/final_tour.json")).unwrap();
    assert_eq!(last.len(), tsp.num_vertices());
}

#[test]
fn dot_export_of_gadget_and_graph() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(kopt(d, &["export", "dot", "--gadget", "simple42"]).status.code(), Some(0));
    assert!(fs::read_to_string(d.join("graph.dot")).unwrap().starts_with("graph"));
    kopt(d, &["compile", "--family", "michel-scott", "--n", "1", "--labeling", "k9"]);
    let tsp = d.join("tsp.json");
    let tour = d.join("tour.json");
    let o = kopt(d, &["export", "dot", "--tsp", tsp.to_str().unwrap(), "--tour", tour.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let dot = fs::read_to_string(d.join("graph.dot")).unwrap();
    assert!(dot.contains("color=darkgreen") && dot.contains("penwidth=3"));
}

#[test]
fn pls_sampling_splits_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let o = kopt(
        dir.path(),
        &["--workers", "3", "verify", "pls-nonedge", "--family", "random", "--n", "4", "--max-degree", "5", "--samples", "30"],
    );
    assert_eq!(o.status.code(), Some(0));
    let r = report(dir.path());
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["report"]["samples"], 30);
}
