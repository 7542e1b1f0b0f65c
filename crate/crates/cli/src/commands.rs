use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use cvgraph::exec::Execution;
use cvgraph::orbit::{explore_with, find_sequence_with, key_hash};
use cvgraph::rules::{format_ops, parse_ops};
use cvgraph::scalar::parse_scalar_list;
use cvgraph::verify::verify_script;
use cvgraph::{apply_sequence, orbit_stats, parse_scalar, OrbitConfig, RuleOp, Scalar, SearchOutcome, WeightedGraph};

use crate::{Budget, Command, OpSource};

pub const FAILURE: u8 = 1;
pub const USAGE: u8 = 2;

/// Runs one subcommand. `Err` means bad input and maps to the usage status;
/// a failed check is reported through the returned code.
pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Apply { input, ops, output, trace } => apply(&input, &ops, output.as_deref(), trace.as_deref()),
        Command::Stabilizers { input, xi } => stabilizers(&input, &xi),
        Command::Verify { input, ops, pauli_level, xi } => verify(&input, &ops, pauli_level, &xi),
        Command::Orbit { input, budget, output, save_graphs } => orbit(&input, &budget, &output, save_graphs),
        Command::Connect { from, to, budget, output } => connect(&from, &to, &budget, output.as_deref()),
        Command::ExportDot { input } => {
            print!("{}", cvgraph::dot::to_dot(&read_graph(&input)?));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_graph(path: &Path) -> Result<WeightedGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    WeightedGraph::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_ops(source: &OpSource) -> Result<Vec<RuleOp>> {
    match (&source.script, &source.ops) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_ops(&text).with_context(|| format!("parsing {}", path.display()))
        }
        (None, Some(inline)) => parse_ops(&inline.replace(';', "\n")).context("parsing inline ops"),
        (None, None) => bail!("no ops given"),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn apply(input: &Path, source: &OpSource, output: Option<&Path>, trace: Option<&Path>) -> Result<ExitCode> {
    let graph = read_graph(input)?;
    let ops = read_ops(source)?;
    let run = apply_sequence(&graph, &ops)?;
    if let Some(dir) = trace {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (i, g) in run.graphs.iter().enumerate() {
            write_file(&dir.join(format!("step_{i:03}.cvg")), &g.serialize())?;
        }
    }
    match output {
        Some(path) => write_file(path, &run.result.serialize())?,
        None => print!("{}", run.result.serialize()),
    }
    Ok(ExitCode::SUCCESS)
}

/// `Ga: Xa(ξ) Zb(Ω_ab ξ) ...` with neighbors in ascending order.
pub fn stabilizer_line(graph: &WeightedGraph, a: usize, xi: &Scalar) -> String {
    let mut line = format!("G{a}: X{a}({xi})");
    for b in graph.neighborhood(a).expect("vertex in range") {
        let _ = write!(line, " Z{b}({})", graph.weight(a, b) * xi);
    }
    line
}

fn stabilizers(input: &Path, xi: &str) -> Result<ExitCode> {
    let graph = read_graph(input)?;
    let xi = parse_scalar(xi).context("--xi")?;
    for a in 1..=graph.n() {
        println!("{}", stabilizer_line(&graph, a, &xi));
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(input: &Path, source: &OpSource, pauli_level: bool, xi: &str) -> Result<ExitCode> {
    let graph = read_graph(input)?;
    let ops = read_ops(source)?;
    let xi = parse_scalar(xi).context("--xi")?;
    // Ops that the rules reject outright are input errors, not mismatches.
    apply_sequence(&graph, &ops)?;
    let report = verify_script(&graph, &ops, &xi);
    print!("{}", report.render(pauli_level));
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(FAILURE) })
}

fn config(budget: &Budget) -> Result<OrbitConfig> {
    let delta_set = match &budget.delta {
        Some(list) => parse_scalar_list(list).context("--delta")?,
        None => Vec::new(),
    };
    let lambda_set = match &budget.lambda {
        Some(list) => parse_scalar_list(list).context("--lambda")?,
        None => Vec::new(),
    };
    let cfg = OrbitConfig {
        include_scale: !lambda_set.is_empty(),
        delta_set,
        lambda_set,
        include_f2: budget.f2,
        max_depth: budget.depth,
        max_nodes: budget.max_nodes,
    };
    if cfg.delta_set.is_empty() && !cfg.include_f2 && !cfg.include_scale {
        bail!("no moves enabled; pass --delta, --lambda or --f2");
    }
    cfg.validate()?;
    Ok(cfg)
}

fn sidecar_dir(dump: &Path) -> PathBuf {
    let mut name = dump.as_os_str().to_owned();
    name.push(".graphs");
    PathBuf::from(name)
}

fn orbit(input: &Path, budget: &Budget, output: &Path, save_graphs: bool) -> Result<ExitCode> {
    let graph = read_graph(input)?;
    let cfg = config(budget)?;
    let orbit = explore_with(&graph, &cfg, Execution::default())?;
    write_file(output, &orbit.dump())?;
    if save_graphs {
        let dir = sidecar_dir(output);
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        for (key, node) in &orbit.nodes {
            write_file(&dir.join(format!("{}.cvg", key_hash(key))), &node.graph.serialize())?;
        }
    }
    let stats = orbit_stats(&orbit);
    println!("nodes: {}", stats.node_count);
    for (depth, count) in &stats.depth_histogram {
        println!("depth {depth}: {count}");
    }
    println!("truncated: {}", stats.truncated);
    if let (Some(lo), Some(hi)) = (&stats.min_weight_magnitude, &stats.max_weight_magnitude) {
        println!("weight magnitude: {lo} .. {hi}");
    }
    Ok(ExitCode::SUCCESS)
}

fn connect(from: &Path, to: &Path, budget: &Budget, output: Option<&Path>) -> Result<ExitCode> {
    let g1 = read_graph(from)?;
    let g2 = read_graph(to)?;
    let cfg = config(budget)?;
    match find_sequence_with(&g1, &g2, &cfg, Execution::default())? {
        SearchOutcome::Found(ops) => {
            let text = format_ops(&ops);
            match output {
                Some(path) => write_file(path, &text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        SearchOutcome::NotFoundWithinBudget => {
            eprintln!("no sequence found within budget");
            Ok(ExitCode::from(FAILURE))
        }
    }
}
