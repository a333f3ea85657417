use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_linkgraph"))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

const D3: &str = r#"{"n": 2, "edges": [[0, 1], [0, 1], [0, 1]]}"#;
const C6: &str = r#"{"n": 6, "edges": [[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [5, 0]]}"#;
const K5: &str = r#"{"n": 5, "edges": [[0,1],[0,2],[0,3],[0,4],[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#;

#[test]
fn build_dipole_link_graph() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "d3.json", D3);
    let out = run(&["build", arg(&g), "--ell", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["n"], 3);
    assert_eq!(v["edges"].as_array().unwrap().len(), 6);
    assert_eq!(v["kind"], "link");
    assert_eq!(v["vertex_provenance"].as_object().unwrap().len(), 3);
}

#[test]
fn build_empty_graph() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "e.json", r#"{"n": 0, "edges": []}"#);
    for kind in ["link", "path", "arc"] {
        let out = run(&["build", arg(&g), "--kind", kind, "--ell", "2"]);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        assert_eq!(v["n"], 0);
        assert!(v["edges"].as_array().unwrap().is_empty());
    }
}

#[test]
fn build_arc_graph_is_directed() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c6.json", C6);
    let v = json(&run(&["build", arg(&g), "--kind", "arc", "--ell", "1"]));
    assert_eq!(v["directed"], true);
    assert_eq!(v["n"], 12);
}

#[test]
fn build_dot() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "d3.json", D3);
    let out = run(&["--format", "dot", "build", arg(&g), "--ell", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph G {"));
    assert_eq!(text.matches("--").count(), 6);
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "bad.json", "{\"n\": 2, \"edges\": [[0, 1]");
    let out = run(&["build", arg(&g), "--ell", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["build", arg(&missing), "--ell", "1"]).status.code(), Some(2));
}

#[test]
fn loop_exits_3() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "loop.json", r#"{"n": 2, "edges": [[0, 1], [1, 1]]}"#);
    assert_eq!(run(&["build", arg(&g), "--ell", "1"]).status.code(), Some(3));
    let g = write(&dir, "range.json", r#"{"n": 2, "edges": [[0, 5]]}"#);
    assert_eq!(run(&["build", arg(&g), "--ell", "1"]).status.code(), Some(3));
}

#[test]
fn roots_of_six_cycle() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c6.json", C6);
    let out = run(&["roots", arg(&g), "--ell", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["exhaustive"], true);
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 2);
    let mut sizes: Vec<(u64, usize)> = roots.iter().map(|r| (r["graph"]["n"].as_u64().unwrap(), r["graph"]["edges"].as_array().unwrap().len())).collect();
    sizes.sort();
    // the 6-cycle and the spider with three legs of length 2
    assert_eq!(sizes, vec![(6, 6), (7, 6)]);
    for r in roots {
        assert_eq!(r["witness"]["vertices"].as_object().unwrap().len(), 6);
        assert_eq!(r["witness"]["edges"].as_object().unwrap().len(), 6);
    }
}

#[test]
fn roots_out_of_budget_exits_4() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c6.json", C6);
    let out = run(&["--budget", "1", "roots", arg(&g), "--ell", "2"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["exhaustive"], false);
}

#[test]
fn roots_keep_target_ids() {
    let dir = TempDir::new().unwrap();
    let text = r#"{"n": 3, "edges": [[10, 20], [20, 30], [30, 10]], "vertex_ids": [10, 20, 30], "edge_ids": [4, 8, 9]}"#;
    let g = write(&dir, "k3.json", text);
    let out = run(&["roots", arg(&g), "--ell", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let input: Value = serde_json::from_str(text).unwrap();
    assert_eq!(v["target"], input);
    assert_eq!(v["roots"].as_array().unwrap().len(), 2);
    for r in v["roots"].as_array().unwrap() {
        let mut ids: Vec<u64> = r["witness"]["vertices"].as_object().unwrap().values().map(|x| x.as_u64().unwrap()).collect();
        ids.sort();
        assert_eq!(ids, vec![10, 20, 30]);
    }
}

#[test]
fn color_k5() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k5.json", K5);
    let out = run(&["color", arg(&g), "--ell", "6", "--report-bounds"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["coloring"]["palette"].as_u64().unwrap() <= 3);
    let colors = v["coloring"]["colors"].as_array().unwrap();
    assert_eq!(colors.len(), v["links"].as_array().unwrap().len());
    assert!(v["bounds"]["checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));
}

#[test]
fn analyze_natural_partition() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k5.json", K5);
    let out = run(&["analyze", arg(&g), "--ell", "2", "--partition", "natural"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let axioms = v["partition"]["axioms"].as_object().unwrap();
    assert_eq!(axioms.len(), 5);
    assert!(axioms.values().all(Value::is_null));
    assert_eq!(v["partition"]["census"]["cyclic"], 1);
    assert_eq!(v["partition"]["quotient"]["embeds"], true);
    assert_eq!(v["connectivity"]["connected"], true);
    assert_eq!(v["link_graph"]["n"], 30);
}

#[test]
fn analyze_partition_file() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c6.json", C6);
    let vparts: Vec<Vec<usize>> = (0..6).map(|v| vec![v]).collect();
    let eparts: Vec<Vec<usize>> = (0..6).map(|e| vec![e]).collect();
    let p = write(&dir, "p.json", &serde_json::json!({"vparts": vparts, "eparts": eparts}).to_string());
    let out = run(&["analyze", arg(&g), "--ell", "1", "--partition", arg(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["partition"]["vertex_parts"], 6);
    assert_eq!(v["partition"]["census"]["cyclic"], 1);

    let p = write(&dir, "bad.json", r#"{"vparts": [[0]], "eparts": []}"#);
    assert_eq!(run(&["analyze", arg(&g), "--ell", "1", "--partition", arg(&p)]).status.code(), Some(3));
}

#[test]
fn analyze_hadwiger() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "d3.json", D3);
    let v = json(&run(&["analyze", arg(&g), "--ell", "1", "--hadwiger"]));
    assert_eq!(v["hadwiger"]["eta"]["eta_derived"], 3);
    assert_eq!(v["hadwiger"]["eta"]["holds"], true);
    let g = write(&dir, "k5.json", K5);
    assert_eq!(run(&["analyze", arg(&g), "--ell", "2", "--hadwiger"]).status.code(), Some(4));
}

#[test]
fn expand_class() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c4.json", r#"{"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [3, 0]]}"#);
    let out = run(&["--budget", "1", "expand", arg(&g), "--ell", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let members = json(&out)["members"].as_array().unwrap().clone();
    // the cycle itself and the cycle with one pendant edge
    assert_eq!(members.len(), 2);
    let star = write(&dir, "star.json", r#"{"n": 4, "edges": [[0, 1], [0, 2], [0, 3]]}"#);
    assert_eq!(run(&["expand", arg(&star), "--ell", "3"]).status.code(), Some(3));
}

#[test]
fn verify_vacuous() {
    let out = run(&["verify", "all", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert!(v["suites"].as_array().unwrap().iter().all(|s| s["checks"].as_object().unwrap().is_empty()));
}

#[test]
fn verify_whitney() {
    let out = run(&["verify", "roots", "--target", "whitney"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["suites"][0]["checks"]["whitney"]["passed"], 1);
}

#[test]
fn verify_is_reproducible() {
    let args = ["verify", "all", "--seed", "7", "--trials", "20"];
    let a = bin().args(args).env("LINKGRAPH_THREADS", "1").output().unwrap();
    let b = bin().args(args).env("LINKGRAPH_THREADS", "4").output().unwrap();
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    let counts = json(&run(&["verify", "counts", "--seed", "7"]));
    assert_eq!(counts["passed"], true);
    assert!(counts["suites"][0]["checks"]["regular_counts"]["passed"].as_u64().unwrap() > 0);
}

#[test]
fn bad_arguments() {
    assert_eq!(run(&["verify", "everything"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "counts", "--n", "5-1"]).status.code(), Some(2));
    let out = bin().args(["verify", "counts", "--trials", "1"]).env("LINKGRAPH_THREADS", "many").output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c6.json", C6);
    assert_eq!(run(&["--format", "dot", "roots", arg(&g), "--ell", "2"]).status.code(), Some(3));
}

#[test]
fn out_is_written_whole() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "d3.json", D3);
    let target = dir.path().join("l.json");
    let out = run(&["--out", arg(&target), "build", arg(&g), "--ell", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["ell"], 2);
    let names: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 2, "temporary file left behind: {names:?}");
}

#[test]
fn ids_survive_a_round_trip() {
    let dir = TempDir::new().unwrap();
    let text = r#"{"n": 4, "edges": [[7, 3], [3, 9], [9, 7], [9, 2]], "vertex_ids": [2, 3, 7, 9], "edge_ids": [1, 5, 6, 11]}"#;
    let g = write(&dir, "g.json", text);
    let input: Value = serde_json::from_str(text).unwrap();
    // at ℓ = 0 the graph is its own only root
    let v = json(&run(&["roots", arg(&g), "--ell", "0"]));
    assert_eq!(v["roots"][0]["graph"], input);
    let again = write(&dir, "again.json", &v["roots"][0]["graph"].to_string());
    let w = json(&run(&["roots", arg(&again), "--ell", "0"]));
    assert_eq!(w["target"], input);
}
