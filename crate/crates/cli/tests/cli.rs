use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const TWO_COMPONENT: &str = r#"{"n":5,"arcs":[[0,1],[1,0],[2,4],[3,2],[4,3]],"loops":[0,2,4]}"#;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_loopspec"));
    cmd.env_remove("LOOPSPEC_TOL");
    cmd
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    run_with(bin(), args, stdin)
}

fn run_with(mut cmd: Command, args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = cmd
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn loopspec");
    child.stdin.take().unwrap().write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn graph_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn energy_of_graph_file() {
    let f = graph_file(TWO_COMPONENT);
    let out = run(&["energy", f.path().to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["energy"].as_f64().unwrap() - 4.3458).abs() < 1e-3);
    assert_eq!(v["center"], 0.6);
    assert_eq!(v["deviations"].as_array().unwrap().len(), 5);
}

#[test]
fn generate_pipes_into_energy() {
    let gen = run(&["generate", "--family", "complete", "--n", "1"], None);
    assert_eq!(gen.status.code(), Some(0));
    let out = run(&["energy", "-"], Some(std::str::from_utf8(&gen.stdout).unwrap()));
    assert_eq!(json(&out)["energy"], 0.0);
}

#[test]
fn generate_round_trips() {
    let gen = run(&["generate", "--family", "complete-bipartite", "--a", "3", "--b", "2", "--loops", "0,1,2"], None);
    let text = String::from_utf8(gen.stdout).unwrap();
    let d = loopspec::format::parse_auto(&text).unwrap();
    assert_eq!(format!("{}\n", loopspec::format::to_json(&d)), text);
    assert_eq!((d.order(), d.size(), d.loop_count()), (5, 12, 3));

    let as_text = run(&["generate", "--family", "directed-cycle", "--n", "3", "--all-loops", "--format", "text"], None);
    let d = loopspec::format::parse_auto(std::str::from_utf8(&as_text.stdout).unwrap()).unwrap();
    assert_eq!((d.size(), d.loop_count()), (3, 3));
}

#[test]
fn text_input_is_detected() {
    let out = run(&["spectrum"], Some("# K2 with one loop\nn 2\na 0 1\na 1 0\nl 0\n"));
    let v = json(&out);
    assert!((v["rho"].as_f64().unwrap() - 1.61803398875).abs() < 1e-11);
    assert_eq!(v["charpoly"], serde_json::json!([-1, -1, 1]));
}

#[test]
fn output_is_byte_identical() {
    let a = run(&["bounds"], Some(TWO_COMPONENT));
    let b = run(&["bounds"], Some(TWO_COMPONENT));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(json(&a).as_array().unwrap().len(), 11);
}

#[test]
fn bounds_only_filter() {
    let k2p = r#"{"n":2,"arcs":[[0,1],[1,0]],"loops":[0]}"#;
    let v = json(&run(&["bounds", "--only", "mcclelland"], Some(k2p)));
    let cert = &v[0];
    assert_eq!(cert["bound_id"], "mcclelland");
    assert_eq!(cert["equality"], true);
    assert_eq!(cert["witness"], "n/2·↔K₂⁺");

    let bad = run(&["bounds", "--only", "nope"], Some(k2p));
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn unrecognized_equality_exits_two() {
    let c3_plus_loop = r#"{"n":4,"arcs":[[0,1],[1,3],[3,0]],"loops":[2]}"#;
    let out = run(&["bounds", "--only", "mcclelland"], Some(c3_plus_loop));
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)[0]["witness"], "equality, family unrecognized");
}

#[test]
fn rho_upper_needs_two_vertices() {
    let out = run(&["bounds", "--only", "rho_upper"], Some(r#"{"n":1,"arcs":[],"loops":[]}"#));
    assert_eq!(out.status.code(), Some(1));
    let all = json(&run(&["bounds"], Some(r#"{"n":1,"arcs":[],"loops":[]}"#)));
    assert!(all.as_array().unwrap().iter().all(|c| c["bound_id"] != "rho_upper"));
}

#[test]
fn tolerance_from_environment() {
    let mut cmd = bin();
    cmd.env("LOOPSPEC_TOL", "banana");
    assert_eq!(run_with(cmd, &["bounds"], Some(TWO_COMPONENT)).status.code(), Some(1));

    let mut cmd = bin();
    cmd.env("LOOPSPEC_TOL", "0.2");
    let v = json(&run_with(cmd, &["bounds", "--only", "power_sum_real"], Some(TWO_COMPONENT)));
    // slack 0.39 of rhs 6.5 is within 20 %
    assert_eq!(v[0]["equality"], true);
}

#[test]
fn envelope_wraps_payload() {
    let v = json(&run(&["--envelope", "energy"], Some(TWO_COMPONENT)));
    assert_eq!(v["graph"], serde_json::json!({"n": 5, "m": 5, "sigma": 3, "c2": 2}));
    assert_eq!(v["command"], serde_json::json!(["--envelope", "energy"]));
    assert!(v["payload"]["energy"].is_f64());
    assert!(v["timestamp"].is_string() && v["version"].is_string());
}

#[test]
fn scc_and_decompose() {
    let mut arcs = TWO_COMPONENT.replace(r#"[4,3]]"#, r#"[4,3],[1,2]]"#);
    let v = json(&run(&["scc"], Some(&arcs)));
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    assert_eq!(v["non_cycle_arcs"], serde_json::json!([[1, 2]]));

    arcs = TWO_COMPONENT.to_string();
    let v = json(&run(&["decompose"], Some(&arcs)));
    assert_eq!((v["k"].as_u64(), v["l"].as_u64()), (Some(2), Some(1)));
    assert_eq!(v["applicability"], "applicable");
    assert_eq!(v["sufficient_condition"]["implication_ok"], true);
    assert!((v["sum_component_energy"].as_f64().unwrap() - 4.4125).abs() < 5e-5);
}

#[test]
fn complement_of_full_graph_is_empty() {
    let gen = run(&["generate", "--family", "complete", "--n", "3", "--all-loops"], None);
    let out = run(&["complement"], Some(std::str::from_utf8(&gen.stdout).unwrap()));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "{\"n\":3,\"arcs\":[],\"loops\":[]}\n");
}

#[test]
fn table_output() {
    let out = run(&["--table", "energy"], Some(TWO_COMPONENT));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("energy") && l.contains("4.3458")));
}

#[test]
fn sweep_exhaustive_three() {
    let out = run(&["sweep", "--n", "3", "--theorems", "all"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["graphs_checked"], 512);
    assert_eq!(v["mode"], "exhaustive");
    assert!(v["counterexamples"].as_array().unwrap().is_empty());
}

#[test]
fn sweep_finds_unlisted_mcclelland_equality() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(
        &["sweep", "--n", "4", "--theorems", "mcclelland_equality", "--out", path.to_str().unwrap()],
        None,
    );
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["aborted"], true);
    let witness = &v["counterexamples"][0]["graph"];
    assert_eq!(witness["loops"].as_array().unwrap().len(), 1);
}

#[test]
fn sweep_samples_are_reproducible() {
    let args = ["sweep", "--n", "6", "--samples", "20", "--seed", "9", "--jobs", "2", "--theorems", "mcclelland,rho_upper"];
    let strip = |out: Output| {
        let mut v = json(&out);
        v.as_object_mut().unwrap().remove("wall_time");
        v
    };
    let a = strip(run(&args, None));
    assert_eq!(a, strip(run(&args, None)));
    assert_eq!(a["graphs_checked"], 20);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["bogus"], None).status.code(), Some(1));
    assert_eq!(run(&["sweep", "--n", "5"], None).status.code(), Some(1));
    assert_eq!(run(&["energy", "/nonexistent/graph.json"], None).status.code(), Some(1));
    assert_eq!(run(&["energy"], Some(r#"{"n":2,"arcs":[[0,1],[0,1]],"loops":[]}"#)).status.code(), Some(1));
}
