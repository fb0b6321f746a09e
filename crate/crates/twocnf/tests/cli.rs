use std::io::Write;
use std::process::{Command, Output, Stdio};

use twocnf::dimacs::parse_dimacs;
use twocnf::edgelist::parse_edge_list;
use twocnf_core::fixtures::{fixture, FixtureId};
use twocnf_core::iso::is_isomorphic;

fn twocnf(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_twocnf"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn twocnf");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const S3: &str = "p cnf 4 6\n1 2 0\n1 3 0\n-1 4 0\n-2 -3 0\n2 -4 0\n3 -4 0\n";

#[test]
fn reduce_reports_outcome_and_trace() {
    let full = twocnf(&["reduce"], "p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n");
    assert!(stdout(&full).contains("c outcome: UNSAT\n"));
    assert!(parse_dimacs(&stdout(&full)).unwrap().cnf.is_false());

    let chain = twocnf(&["reduce"], "p cnf 2 2\n1 0\n-1 2 0\n");
    let text = stdout(&chain);
    assert!(text.contains("c outcome: TRIVIALLY-TRUE\nc step: x1:=⊤\nc step: x2:=⊤\n"), "{text}");

    let simple = "p cnf 3 2\n1 2 0\n-2 3 0\n";
    let text = stdout(&twocnf(&["reduce"], simple));
    assert!(text.ends_with(simple), "{text}");
    assert!(!text.contains("step:"));
}

#[test]
fn solve_exit_codes() {
    let o = twocnf(&["solve"], S3);
    assert_eq!(o.status.code(), Some(20));
    assert!(stdout(&o).starts_with("UNSAT\n"));
    let o = twocnf(&["solve"], "p cnf 1 1\n1 0\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "SAT\nv 1 0\n");
    assert_eq!(twocnf(&["solve"], "this is not dimacs\n").status.code(), Some(65));
    assert_eq!(twocnf(&["solve", "--bogus"], "").status.code(), Some(64));
}

#[test]
fn analyze_fixtures() {
    let o = twocnf(&["analyze", "--fixture", "bowtie", "--witness"], "");
    let text = stdout(&o);
    assert!(text.contains("c verdict: InU\nc pattern: PConfig\n"), "{text}");
    let solved = twocnf(&["solve"], &text);
    assert_eq!(solved.status.code(), Some(20));

    let text = stdout(&twocnf(&["analyze", "--fixture", "k4-e"], ""));
    assert!(text.contains("c verdict: NotInU\nc reason: ThetaCore\n"), "{text}");
    assert!(stdout(&twocnf(&["analyze", "--fixture", "hills:3"], "")).contains("c verdict: InU\n"));
}

#[test]
fn analyze_pipeline_is_coherent() {
    for f in FixtureId::catalog() {
        let name = f.to_string();
        let o = twocnf(&["analyze", "--fixture", &name, "--witness"], "");
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        if text.contains("c verdict: InU") {
            assert_eq!(twocnf(&["solve"], &text).status.code(), Some(20), "{name}");
        }
    }
}

#[test]
fn analyze_reads_graphs_and_formulas() {
    let edges = stdout(&twocnf(&["fixture", "butterfly"], ""));
    assert!(stdout(&twocnf(&["analyze"], &edges)).contains("c pattern: VConfig\n"));
    let text = stdout(&twocnf(&["analyze"], S3));
    assert!(text.contains("c simplification: SIMPLE\n"));
    assert!(text.contains("c pattern: K4\n"));
}

#[test]
fn analyze_json_and_files() {
    let dir = std::env::temp_dir().join(format!("twocnf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (w, d) = (dir.join("w.cnf"), dir.join("g.dot"));
    let o = twocnf(
        &["analyze", "--fixture", "book", "--json", "--witness-out", w.to_str().unwrap(), "--dot", d.to_str().unwrap()],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["format_version"], 1);
    assert_eq!(json["verdict"], "InU");
    assert_eq!(json["pattern"], "K113");
    assert_eq!(json["embedding"]["paths"].as_array().unwrap().len(), 7);
    assert_eq!(json["witness_path"], w.to_str().unwrap());
    let witness = std::fs::read_to_string(&w).unwrap();
    assert_eq!(twocnf(&["solve", w.to_str().unwrap()], "").status.code(), Some(20));
    assert!(witness.starts_with("c "));
    assert!(std::fs::read_to_string(&d).unwrap().starts_with("graph G {"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn census_output() {
    assert!(stdout(&twocnf(&["census", "--fixture", "c3"], "")).contains("64 total, 64 sat, 0 unsat\n"));
    let k4 = stdout(&twocnf(&["census", "--fixture", "k4", "--threads", "2"], ""));
    assert!(k4.contains("4096 total, "));
    assert!(!k4.contains(" 0 unsat"));
    assert_eq!(twocnf(&["census", "--fixture", "butterfly", "--cap", "5"], "").status.code(), Some(70));
    let line = stdout(&twocnf(&["census", "--fixture", "c3", "--json"], ""));
    assert_eq!(line.lines().count(), 1);
    let json: serde_json::Value = serde_json::from_str(&line).unwrap();
    assert_eq!((json["total"].as_u64(), json["sat"].as_u64(), json["unsat"].as_u64()), (Some(64), Some(64), Some(0)));
    assert_eq!(json["graph_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn minor_search() {
    let o = twocnf(&["minor", "K4", "--fixture", "config:eee1"], "");
    assert!(stdout(&o).starts_with("found\npattern: K4\n"));
    let o = twocnf(&["minor", "butterfly", "--fixture", "square-butterfly"], "");
    assert_eq!(stdout(&o), "no subdivision of VConfig\n");
    assert_eq!(twocnf(&["minor", "petersen", "--fixture", "k4"], "").status.code(), Some(64));
}

#[test]
fn fixtures_round_trip() {
    let o = twocnf(&["fixture", "butterfly"], "");
    let g = parse_edge_list(&stdout(&o)).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (5, 6));
    let book = parse_edge_list(&stdout(&twocnf(&["fixture", "book"], ""))).unwrap();
    assert_eq!((book.vertex_count(), book.edge_count()), (5, 7));
    assert_eq!(stdout(&twocnf(&["fixture", "hills:2"], "")).lines().skip(1).collect::<Vec<_>>(), stdout(&o).lines().skip(1).collect::<Vec<_>>());
    for f in FixtureId::catalog() {
        let g = parse_edge_list(&stdout(&twocnf(&["fixture", &f.to_string()], ""))).unwrap();
        assert!(is_isomorphic(&g, &fixture(&f.to_string()).unwrap()), "{f}");
    }
    assert_eq!(twocnf(&["fixture", "k5"], "").status.code(), Some(64));
    assert!(stdout(&twocnf(&["fixture", "--list"], "")).lines().any(|l| l == "config:vve2"));
}
