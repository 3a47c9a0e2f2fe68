use std::io::Write;
use std::process::{Command, Output, Stdio};

use reeb_cli::emit::{graph_from_json, GraphJson};
use reeb_cli::specfile::SpecFile;
use reeb_core::curve::analyze_curve;
use reeb_core::graphops::canonical_code;
use reeb_core::rational::{int, rat};
use reeb_core::{parse_polynomial, CanonicalCode, DomainSpec};

fn reeb(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_reeb"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = reeb(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn spec_json(spec: &DomainSpec) -> String {
    serde_json::to_string(&SpecFile::from_spec(spec)).unwrap()
}

const DISK: &str = r#"{"curves": ["x^2 + y^2 - 1"], "selected": [[0, 0]], "seed": [[0, 1], [0, 1]]}"#;
const DISK_COMPLEMENT: &str =
    r#"{"curves": ["x^2 + y^2 - 1"], "selected": [[0, 0]], "seed": [[0, 1], [0, 1]], "complement": true}"#;

fn annulus() -> String {
    let oval = |s: &str| {
        let f = parse_polynomial(s).unwrap();
        let a = analyze_curve(&f, 0).unwrap();
        (f, (0..a.components).find(|&c| a.component_bounded[c]).unwrap())
    };
    let (f1, o1) = oval("y^2 - (x-1)*(x-2)*(x-3)");
    let (f2, o2) = oval("y^2 - x*(x-4)*(x-5)");
    spec_json(&DomainSpec::new(vec![f1, f2], vec![(0, o1), (1, o2)], (rat(5, 2), int(0))))
}

fn graph(stdin: &str) -> GraphJson {
    serde_json::from_str(&ok(&["graph", "-"], stdin)).unwrap()
}

#[test]
fn disk_graph_json() {
    let g = graph(DISK);
    assert_eq!((g.vertices.len(), g.edges.len()), (2, 1));
    assert_eq!(g.vertices[0].kind, "valency1_left");
    assert_eq!(g.code.events, ["Birth@0(bounded)", "Death@0()"]);
}

#[test]
fn annulus_graph_has_a_two_edge_slab() {
    let g = graph(&annulus());
    assert_eq!((g.vertices.len(), g.edges.len()), (4, 4));
    assert_eq!(g.slabs.iter().filter(|s| s.order.len() == 2).count(), 1);
    let xs: Vec<&str> = g.vertices.iter().map(|v| v.x_lo.as_str()).collect();
    assert_eq!(xs, ["0", "1", "2", "4"]);
}

#[test]
fn json_reparse_keeps_code() {
    for seed in 0..6 {
        let spec = ok(&["random", "--seed", &seed.to_string(), "--complexity", "2"], "");
        let g = graph(&spec);
        let code: CanonicalCode = ok(&["code", "-"], &spec).trim().parse().unwrap();
        assert_eq!(canonical_code(&graph_from_json(&g).unwrap()).unwrap(), code);
        // the graph file is accepted wherever a graph suffices
        let again = ok(&["code", "-"], &serde_json::to_string(&g).unwrap());
        assert_eq!(again.trim(), code.to_string());
    }
}

#[test]
fn dual_of_disk_is_its_complement() {
    let dual: GraphJson = serde_json::from_str(&ok(&["dual", "-"], DISK)).unwrap();
    let complement = graph(DISK_COMPLEMENT);
    assert_eq!(dual.code, complement.code);
}

#[test]
fn dot_output() {
    let dot = ok(&["graph", "-", "--format", "dot"], DISK_COMPLEMENT);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("shape=diamond"));
}

#[test]
fn equivalence_and_permutation() {
    let dir = env!("CARGO_TARGET_TMPDIR");
    let a = format!("{dir}/equiv_a.json");
    let b = format!("{dir}/equiv_b.json");
    std::fs::write(&a, DISK).unwrap();
    std::fs::write(&b, r#"{"curves": ["(x-3)^2 + 4*y^2 - 9"], "selected": [[0, 0]], "seed": [[3, 1], [0, 1]]}"#)
        .unwrap();
    assert_eq!(ok(&["equiv", &a, &b], ""), "true\n");
    std::fs::write(&b, &annulus()).unwrap();
    assert_eq!(ok(&["equiv", &a, &b], ""), "false\n");
    assert_eq!(ok(&["permutation", "-"], DISK), "(1 2)\n");
}

#[test]
fn census_both_ways() {
    let v: serde_json::Value = serde_json::from_str(&ok(&["census", "-"], &annulus())).unwrap();
    assert_eq!(v["graph"], serde_json::json!({"ovals": 2, "lines": 0}));
    assert_eq!(v["curves"], v["graph"]);
    assert_eq!(v["b1"], 1);
}

#[test]
fn analyze_reports_class() {
    let v: serde_json::Value = serde_json::from_str(&ok(&["analyze", "-"], DISK)).unwrap();
    assert_eq!(v["class"], "finite_type");
    let v: serde_json::Value = serde_json::from_str(&ok(&["analyze", "-"], DISK_COMPLEMENT)).unwrap();
    assert_eq!(v["class"], "weakly_finite_type");
}

#[test]
fn realized_spec_is_valid_input() {
    let out = ok(&["realize", "-", "--case", "A"], DISK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let code = ok(&["code", "-"], &out);
    assert_eq!(code.trim(), v["target"].as_str().unwrap());
    assert_eq!(code.trim(), "initial [] events [Birth@0(bounded)] final [bounded]");
}

#[test]
fn render_svg() {
    let svg = ok(&["render", "-"], &annulus());
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<circle").count(), 4);
    let svg = ok(&["render", "-", "--window", "-2,2,-3/2,3/2"], DISK_COMPLEMENT);
    assert!(svg.contains("<polyline"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str], stdin: &str| reeb(args, stdin).status.code().unwrap();
    assert_eq!(code(&["graph", "-"], r#"{"curves": ["y^x"], "selected": [], "seed": [[0, 1], [0, 1]]}"#), 2);
    assert_eq!(code(&["graph", "-"], "not json"), 2);
    assert_eq!(code(&["render", "-", "--window", "1,1,0,1"], DISK), 2);
    assert_eq!(code(&["random", "--seed", "1", "--complexity", "9"], ""), 2);
    // two unit circles with tangencies on the lines x = -1 and x = 1
    let shared = r#"{"curves": ["x^2 + y^2 - 1", "x^2 + (y-3)^2 - 1"], "selected": [[0, 0], [1, 0]], "seed": [[0, 1], [0, 1]]}"#;
    assert_eq!(code(&["graph", "-"], shared), 3);
    assert_eq!(code(&["analyze", "-"], shared), 3);
    // case A needs a compact base
    assert_eq!(code(&["realize", "-", "--case", "A"], DISK_COMPLEMENT), 3);
}
