use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gencov::dartgraph::{find_isomorphism, parse_text, to_text};
use gencov::permgrp::{Group, Perm};
use gencov::quotient::ActionGroup;
use gencov::sample;
use gencov::selftest::golden_fixture;
use gencov::voltage::{bicoset_spec, SpecFile};
use tempfile::TempDir;

fn gencov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gencov"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn spec(dir: &TempDir, name: &str, twisted: bool) -> PathBuf {
    put(dir, name, &SpecFile::from_gvg(&golden_fixture(twisted)).to_json())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn cover_writes_graph_and_fibre_table() {
    let dir = TempDir::new().unwrap();
    let input = spec(&dir, "twisted.json", true);
    let out = dir.path().join("cover.txt");
    let o = gencov(&["cover", s(&input), "-o", s(&out)]);
    assert!(o.status.success());
    let g = parse_text(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(g.vertex_count(), 6);
    assert_eq!(g.components().count, 3);
    assert!(stdout(&o).contains("3 component(s)"));
    let fibres = fs::read_to_string(dir.path().join("cover.txt.fibres")).unwrap();
    assert_eq!(fibres.lines().filter(|l| l.starts_with("vertex")).count(), 6);
}

#[test]
fn trivial_voltages_give_a_hexagon() {
    let dir = TempDir::new().unwrap();
    let input = spec(&dir, "plain.json", false);
    let o = gencov(&["cover", s(&input)]);
    assert!(o.status.success());
    let g = parse_text(&stdout(&o)).unwrap();
    let hexagon = sample::cycle_family(6).graph;
    assert!(find_isomorphism(&g, &hexagon).unwrap().is_some());

    let dot = gencov(&["cover", s(&input), "--format", "dot"]);
    assert!(stdout(&dot).starts_with("graph"));
    assert_eq!(stdout(&dot).matches(" -- ").count(), 6);
}

#[test]
fn invalid_specs_exit_2_and_caps_exit_3() {
    let dir = TempDir::new().unwrap();
    let mut doc: serde_json::Value =
        serde_json::from_str(&SpecFile::from_gvg(&golden_fixture(true)).to_json()).unwrap();
    doc["voltages"][0] = "(1 2)(3 4 5 6)".into();
    let bad = put(&dir, "bad.json", &doc.to_string());
    let o = gencov(&["cover", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("dart 0"));

    let garbled = put(&dir, "garbled.json", "{ \"schema\": 1, ");
    assert_eq!(gencov(&["check", s(&garbled)]).status.code(), Some(2));

    let input = spec(&dir, "twisted.json", true);
    assert_eq!(gencov(&["cover", s(&input), "--cap", "10"]).status.code(), Some(3));
}

#[test]
fn check_reports_verdicts() {
    let dir = TempDir::new().unwrap();
    let plain = spec(&dir, "plain.json", false);
    let text = stdout(&gencov(&["check", s(&plain)]));
    assert!(text.contains("connected: true"));
    assert!(text.contains("simple: true"));

    let twisted = spec(&dir, "twisted.json", true);
    let o = gencov(&["check", "--json", s(&twisted)]);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["connected"], false);
    assert_eq!(report["components"], 3);
    assert_eq!(report["simple"], false);
    assert_eq!(report["faithful"], true);

    let gen = Perm::parse("(1 2 3 4 5 6)", 6).unwrap();
    let z6 = Group::generate(6, vec![gen.clone()]).unwrap();
    let left = Group::generate(6, vec![gen.pow(2)]).unwrap();
    let right = Group::generate(6, vec![gen.pow(3)]).unwrap();
    let bic = put(&dir, "bicoset.json", &SpecFile::from_gvg(&bicoset_spec(&z6, &left, &right).unwrap()).to_json());
    let o = gencov(&["check", "--json", s(&bic)]);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["connected"], true);
    let mut valences: Vec<u64> = report["valences"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    valences.sort();
    assert_eq!(valences, [2, 3]);
}

fn action_files(dir: &TempDir, family: &sample::GraphFamily, symmetries: &[Perm]) -> (PathBuf, PathBuf) {
    let action = ActionGroup::from_vertex_permutations(family.graph.clone(), symmetries).unwrap();
    (
        put(dir, "graph.txt", &to_text(&family.graph)),
        put(dir, "action.txt", &action.format_generators()),
    )
}

#[test]
fn reconstruct_hexagon_actions() {
    let dir = TempDir::new().unwrap();
    let hexagon = sample::cycle_family(6);
    let out = dir.path().join("spec.json");

    let (graph, action) = action_files(&dir, &hexagon, &hexagon.symmetries[..1]);
    let o = gencov(&["reconstruct", "--graph", s(&graph), "--action", s(&action), "-o", s(&out), "--verify"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verified"));
    let rotation = SpecFile::from_json(&fs::read_to_string(&out).unwrap()).unwrap().to_gvg().unwrap();
    assert_eq!(rotation.base().vertex_count(), 1);
    assert!(rotation.base().is_loop(0));

    let (graph, action) = action_files(&dir, &hexagon, &hexagon.symmetries);
    let o = gencov(&["reconstruct", "--graph", s(&graph), "--action", s(&action), "-o", s(&out)]);
    assert!(o.status.success());
    let dihedral = SpecFile::from_json(&fs::read_to_string(&out).unwrap()).unwrap().to_gvg().unwrap();
    assert_eq!(dihedral.base().dart_count(), 1);
    assert!(dihedral.base().is_semi_edge(0));
    assert_eq!(dihedral.vertex_weight(0).order(), 2);
}

#[test]
fn reconstruct_bipartite_gives_a_tree_quotient() {
    let dir = TempDir::new().unwrap();
    let k23 = sample::bipartite_family(2, 3);
    let z6 = Perm::parse("(1 2)(3 4 5)", 5).unwrap();
    let (graph, action) = action_files(&dir, &k23, &[z6]);
    let o = gencov(&["reconstruct", "--graph", s(&graph), "--action", s(&action), "--verify"]);
    assert!(o.status.success());
    let gvg = SpecFile::from_json(&stdout(&o)).unwrap().to_gvg().unwrap();
    assert_eq!(gvg.base().vertex_count(), 2);
    assert!(gvg.voltages().iter().all(Perm::is_identity));
}

#[test]
fn reconstruct_rejects_non_automorphisms() {
    let dir = TempDir::new().unwrap();
    let graph = put(&dir, "graph.txt", &to_text(&sample::cycle_family(6).graph));
    let action = put(&dir, "action.txt", "(v0 v1)\n");
    let o = gencov(&["reconstruct", "--graph", s(&graph), "--action", s(&action)]);
    assert_eq!(o.status.code(), Some(2));
    let garbled = put(&dir, "garbled.txt", "(v0 x1)\n");
    let o = gencov(&["reconstruct", "--graph", s(&graph), "--action", s(&garbled)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn normalize_trivialises_tree_voltages() {
    let dir = TempDir::new().unwrap();
    let input = spec(&dir, "twisted.json", true);
    let out = dir.path().join("normal.json");
    let o = gencov(&["normalize", s(&input), "-o", s(&out)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("conjugator (1 2 3)(4 6 5)"));
    let normal_text = fs::read_to_string(&out).unwrap();
    let normal = SpecFile::from_json(&normal_text).unwrap().to_gvg().unwrap();
    assert!(normal.voltages().iter().all(Perm::is_identity));

    let again = dir.path().join("again.json");
    let o = gencov(&["normalize", s(&out), "--tree", "d0", "-o", s(&again)]);
    assert!(o.status.success());
    assert_eq!(fs::read(&again).unwrap(), normal_text.as_bytes());

    assert_eq!(gencov(&["normalize", s(&input), "--tree", "d7"]).status.code(), Some(2));
    assert_eq!(gencov(&["normalize", s(&input), "--normalize", "zero"]).status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let o = gencov(&["selftest", "--seed", "11"]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 9);
}
