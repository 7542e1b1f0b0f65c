use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cvgraph::scalar::{int, ratio};
use cvgraph::{apply_f2_rule, WeightedGraph};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvgraph")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn five_vertex() -> WeightedGraph {
    WeightedGraph::from_edges(
        5,
        [(1, 2, int(1)), (1, 3, int(2)), (1, 5, int(3)), (2, 5, int(1)), (3, 4, int(1)), (4, 5, int(2))],
    )
    .unwrap()
}

fn triangle() -> WeightedGraph {
    WeightedGraph::from_edges(3, [(1, 2, int(1)), (1, 3, int(1)), (2, 3, int(1))]).unwrap()
}

struct Scratch(TempDir);

impl Scratch {
    fn new() -> Self {
        Self(tempfile::tempdir().unwrap())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn graph(&self, name: &str, g: &WeightedGraph) -> String {
        self.text(name, &g.serialize())
    }

    fn text(&self, name: &str, contents: &str) -> String {
        let p = self.path(name);
        fs::write(&p, contents).unwrap();
        p.to_str().unwrap().to_string()
    }
}

fn read_graph(path: &Path) -> WeightedGraph {
    WeightedGraph::parse(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn apply_worked_example() {
    let s = Scratch::new();
    let g = s.graph("g.cvg", &five_vertex());
    let ops = s.text("ops.txt", "# pivot on 1\nlg 1 1\n");
    let out = s.path("out.cvg");
    let res = run(&["apply", "-i", &g, "-s", &ops, "-o", out.to_str().unwrap()]);
    assert_eq!(code(&res), 0);
    let h = read_graph(&out);
    assert_eq!(*h.weight(2, 3), int(-2));
    assert_eq!(*h.weight(2, 5), int(-2));
    assert_eq!(*h.weight(3, 5), int(-6));
    assert_eq!(h.edge_count(), 8);
}

#[test]
fn apply_empty_script_and_involution() {
    let s = Scratch::new();
    let g = s.graph("g.cvg", &five_vertex());
    let empty = s.text("empty.txt", "");
    let res = run(&["apply", "-i", &g, "-s", &empty]);
    assert_eq!(stdout(&res), five_vertex().serialize());
    let res = run(&["apply", "-i", &g, "--ops", "f2 2; f2 2"]);
    assert_eq!(stdout(&res), five_vertex().serialize());
}

#[test]
fn apply_trace_writes_every_step() {
    let s = Scratch::new();
    let g = s.graph("g.cvg", &five_vertex());
    let dir = s.path("trace");
    let res = run(&["apply", "-i", &g, "--ops", "lg 1 1; f2 3", "--trace", dir.to_str().unwrap()]);
    assert_eq!(code(&res), 0);
    assert_eq!(read_graph(&dir.join("step_000.cvg")), five_vertex());
    assert_eq!(read_graph(&dir.join("step_002.cvg")), WeightedGraph::parse(&stdout(&res)).unwrap());
    assert!(!dir.join("step_003.cvg").exists());
}

#[test]
fn parse_errors_exit_2_with_line_numbers() {
    let s = Scratch::new();
    let bad_graph = s.text("bad.cvg", "cvgraph v1\nn 3\ne 2 1 1\n");
    let res = run(&["export-dot", "-i", &bad_graph]);
    assert_eq!(code(&res), 2);
    assert!(String::from_utf8_lossy(&res.stderr).contains("line 3"));

    let g = s.graph("g.cvg", &five_vertex());
    let bad_ops = s.text("ops.txt", "lg 1 1\nrotate 2\n");
    let res = run(&["apply", "-i", &g, "-s", &bad_ops]);
    assert_eq!(code(&res), 2);
    assert!(String::from_utf8_lossy(&res.stderr).contains("line 2"));
}

#[test]
fn invalid_ops_exit_2() {
    let s = Scratch::new();
    let g = s.graph("g.cvg", &five_vertex());
    assert_eq!(code(&run(&["apply", "-i", &g, "--ops", "f2 6"])), 2);
    assert_eq!(code(&run(&["apply", "-i", &g, "--ops", "scale 1 -2"])), 2);
    assert_eq!(code(&run(&["verify", "-i", &g, "--ops", "lg 0 1"])), 2);
    assert_eq!(code(&run(&["apply", "-i", &g])), 2);
    assert_eq!(code(&run(&[])), 2);
}

#[test]
fn stabilizers_listing() {
    let s = Scratch::new();
    let edge = s.graph("e.cvg", &WeightedGraph::from_edges(2, [(1, 2, int(1))]).unwrap());
    assert_eq!(stdout(&run(&["stabilizers", "-i", &edge])), "G1: X1(1) Z2(1)\nG2: X2(1) Z1(1)\n");

    let g = s.graph("g.cvg", &five_vertex());
    let out = stdout(&run(&["stabilizers", "-i", &g, "--xi", "-1/2"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "G1: X1(-1/2) Z2(-1/2) Z3(-1) Z5(-3/2)");
    assert_eq!(lines[4], "G5: X5(-1/2) Z1(-3/2) Z2(-1/2) Z4(-1)");

    let empty = s.graph("n.cvg", &WeightedGraph::new(3).unwrap());
    assert_eq!(stdout(&run(&["stabilizers", "-i", &empty, "--xi", "2"])), "G1: X1(2)\nG2: X2(2)\nG3: X3(2)\n");
}

#[test]
fn verify_reports() {
    let s = Scratch::new();
    let g = s.graph("g.cvg", &five_vertex());
    let res = run(&["verify", "-i", &g, "--ops", "lg 1 1; lg 5 -1/2"]);
    assert_eq!(code(&res), 0);
    assert!(stdout(&res).ends_with("verify: PASS\n"));
    assert!(!stdout(&res).contains("scale convention"));

    let res = run(&["verify", "-i", &g, "--ops", "lg 2 1", "--pauli-level", "--xi", "3"]);
    assert_eq!(code(&res), 0);
    assert_eq!(stdout(&res).matches("(expected").count(), 5);

    let res = run(&["verify", "-i", &g, "--ops", "scale 1 3"]);
    assert_eq!(code(&res), 0);
    assert!(stdout(&res).contains("rule parameter lambda = e^{r}"));
}

#[test]
fn orbit_dump_is_deterministic() {
    let s = Scratch::new();
    let g = s.graph("t.cvg", &triangle());
    let (a, b) = (s.path("a.dump"), s.path("b.dump"));
    for out in [&a, &b] {
        let res = run(&["orbit", "-i", &g, "--delta", "1,-1", "--depth", "2", "-o", out.to_str().unwrap(), "--save-graphs"]);
        assert_eq!(code(&res), 0);
        assert!(stdout(&res).contains("truncated: "));
    }
    let dump = fs::read_to_string(&a).unwrap();
    assert_eq!(dump, fs::read_to_string(&b).unwrap());
    let lines: Vec<&str> = dump.lines().collect();
    assert!(lines[0].starts_with("0 ") && lines[0].ends_with(" root -"));
    let hashes: Vec<&str> = lines.iter().map(|l| l.split(' ').nth(1).unwrap()).collect();
    for l in &lines[1..] {
        let parent = l.rsplit(' ').next().unwrap();
        assert!(l.contains(" lg ") && hashes.contains(&parent), "{l}");
    }
    let sidecar = s.path("a.dump.graphs");
    assert_eq!(fs::read_dir(&sidecar).unwrap().count(), lines.len());
    let root_hash = lines[0].split(' ').nth(1).unwrap();
    assert_eq!(read_graph(&sidecar.join(format!("{root_hash}.cvg"))), triangle());
}

#[test]
fn orbit_requires_moves() {
    let s = Scratch::new();
    let g = s.graph("t.cvg", &triangle());
    let out = s.path("x.dump");
    assert_eq!(code(&run(&["orbit", "-i", &g, "-o", out.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["orbit", "-i", &g, "--delta", "1", "--max-nodes", "0", "-o", out.to_str().unwrap()])), 2);
}

#[test]
fn connect_cases() {
    let s = Scratch::new();
    let g1 = s.graph("g1.cvg", &five_vertex());
    let out = s.path("seq.txt");
    let res = run(&["connect", "-a", &g1, "-b", &g1, "--f2", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&res), 0);
    assert_eq!(fs::read_to_string(&out).unwrap(), "");

    let g2 = s.graph("g2.cvg", &apply_f2_rule(&five_vertex(), 4).unwrap());
    let res = run(&["connect", "-a", &g1, "-b", &g2, "--f2"]);
    assert_eq!(code(&res), 0);
    assert_eq!(stdout(&res), "f2 4\n");

    let far = s.graph("far.cvg", &five_vertex().set_edge(2, 4, ratio(7, 3)).unwrap());
    let res = run(&["connect", "-a", &g1, "-b", &far, "--f2", "--depth", "2"]);
    assert_eq!(code(&res), 1);

    let tri = s.graph("t.cvg", &triangle());
    assert_eq!(code(&run(&["connect", "-a", &g1, "-b", &tri, "--f2"])), 2);
}

#[test]
fn export_dot() {
    let s = Scratch::new();
    let e = s.graph("e.cvg", &WeightedGraph::from_edges(2, [(1, 2, ratio(3, 4))]).unwrap());
    assert!(stdout(&run(&["export-dot", "-i", &e])).contains("1 -- 2 [label=\"3/4\"]"));
    let n = s.graph("n.cvg", &WeightedGraph::new(3).unwrap());
    assert_eq!(stdout(&run(&["export-dot", "-i", &n])), "graph cvgraph {\n  1;\n  2;\n  3;\n}\n");
    let g = s.graph("g.cvg", &five_vertex());
    assert_eq!(stdout(&run(&["export-dot", "-i", &g])).matches(" -- ").count(), 6);
}
