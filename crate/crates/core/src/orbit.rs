//! Bounded exploration of the graphs reachable under the rewrite rules.
//!
//! The reachable set is infinite in general, so every search here is bounded
//! by a finite move set, a depth limit and a node budget. A failed search
//! says nothing about whether two graphs are equivalent.

use std::collections::{BTreeMap, HashMap};

use indexmap::IndexMap;
use num_traits::{Signed, Zero};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exec::Execution;
use crate::graph::{GraphError, WeightedGraph};
use crate::rules::{apply_sequence, RuleOp};
use crate::scalar::{is_positive, Scalar};

/// Canonical bytes of a graph, used as the dedup key.
pub type GraphKey = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("max_nodes must be at least 1")]
    ZeroBudget,
    #[error("scale moves enabled but lambda set is empty")]
    EmptyLambdaSet,
    #[error("lambda values must be positive, got {0}")]
    NonPositiveLambda(Scalar),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("search produced a sequence that does not replay to the target")]
    ReplayFailed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitConfig {
    /// `δ` samples for LG moves; empty disables LG.
    pub delta_set: Vec<Scalar>,
    pub lambda_set: Vec<Scalar>,
    pub max_depth: usize,
    pub max_nodes: usize,
    pub include_f2: bool,
    pub include_scale: bool,
}

impl Default for OrbitConfig {
    fn default() -> Self {
        Self {
            delta_set: Vec::new(),
            lambda_set: Vec::new(),
            max_depth: 3,
            max_nodes: 10_000,
            include_f2: false,
            include_scale: false,
        }
    }
}

impl OrbitConfig {
    pub fn validate(&self) -> Result<(), OrbitError> {
        if self.max_nodes == 0 {
            return Err(OrbitError::ZeroBudget);
        }
        if self.include_scale {
            if self.lambda_set.is_empty() {
                return Err(OrbitError::EmptyLambdaSet);
            }
            if let Some(bad) = self.lambda_set.iter().find(|l| !is_positive(l)) {
                return Err(OrbitError::NonPositiveLambda(bad.clone()));
            }
        }
        Ok(())
    }

    /// Every move on an `n`-vertex graph: vertices ascending, then LG for each
    /// `δ` in list order, then F2, then Scale for each `λ`.
    pub fn moves(&self, n: usize) -> Vec<RuleOp> {
        let mut moves = Vec::new();
        for v in 1..=n {
            for delta in &self.delta_set {
                moves.push(RuleOp::Lg { pivot: v, delta: delta.clone() });
            }
            if self.include_f2 {
                moves.push(RuleOp::F2 { vertex: v });
            }
            if self.include_scale {
                for lambda in &self.lambda_set {
                    moves.push(RuleOp::Scale { vertex: v, lambda: lambda.clone() });
                }
            }
        }
        moves
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitNode {
    pub graph: WeightedGraph,
    pub depth: usize,
    pub parent: Option<GraphKey>,
    pub via: Option<RuleOp>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Nodes in discovery order; the root comes first.
    pub nodes: IndexMap<GraphKey, OrbitNode>,
    pub truncated: bool,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> &OrbitNode {
        &self.nodes[0]
    }

    pub fn contains(&self, graph: &WeightedGraph) -> bool {
        self.nodes.contains_key(&graph.canonical_bytes())
    }

    /// Ops leading from the root to the node with `key`.
    pub fn path_to(&self, key: &[u8]) -> Option<Vec<RuleOp>> {
        let mut node = self.nodes.get(key)?;
        let mut ops = Vec::with_capacity(node.depth);
        while let (Some(parent), Some(via)) = (&node.parent, &node.via) {
            ops.push(via.clone());
            node = &self.nodes[parent];
        }
        ops.reverse();
        Some(ops)
    }

    /// One line per node in discovery order:
    /// `<depth> <hash> <op or root> <parent hash or ->`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (key, node) in &self.nodes {
            let via = node.via.as_ref().map_or_else(|| "root".to_string(), ToString::to_string);
            let parent = node.parent.as_deref().map_or_else(|| "-".to_string(), key_hash);
            out.push_str(&format!("{} {} {} {}\n", node.depth, key_hash(key), via, parent));
        }
        out
    }
}

/// Short stable hex digest of a canonical key.
pub fn key_hash(key: &[u8]) -> String {
    let digest = Sha256::digest(key);
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

type Expansion = Vec<(RuleOp, GraphKey, WeightedGraph)>;

fn expand(graph: &WeightedGraph, moves: &[RuleOp]) -> Expansion {
    moves
        .iter()
        .filter_map(|op| {
            let next = op.apply(graph).ok()?;
            Some((op.clone(), next.canonical_bytes(), next))
        })
        .collect()
}

pub fn explore(graph: &WeightedGraph, cfg: &OrbitConfig) -> Result<Orbit, OrbitError> {
    explore_with(graph, cfg, Execution::default())
}

/// Breadth-first enumeration from `graph`.
///
/// Each layer is expanded (possibly in parallel) and then merged in frontier
/// order, so the result does not depend on scheduling. `truncated` is set
/// when the node budget rejects a new graph, or when the last layer still
/// has unseen children at `max_depth`.
pub fn explore_with(graph: &WeightedGraph, cfg: &OrbitConfig, exec: Execution) -> Result<Orbit, OrbitError> {
    cfg.validate()?;
    let moves = cfg.moves(graph.n());
    let mut nodes = IndexMap::new();
    let root_key = graph.canonical_bytes();
    nodes.insert(
        root_key.clone(),
        OrbitNode { graph: graph.clone(), depth: 0, parent: None, via: None },
    );
    let mut frontier = vec![root_key];
    let mut truncated = false;

    for depth in 0..=cfg.max_depth {
        if frontier.is_empty() {
            break;
        }
        let graphs: Vec<&WeightedGraph> = frontier.iter().map(|k| &nodes[k].graph).collect();
        let expansions = exec.map(&graphs, |g| expand(g, &moves));
        if depth == cfg.max_depth {
            truncated = expansions.iter().flatten().any(|(_, key, _)| !nodes.contains_key(key));
            break;
        }
        let mut next = Vec::new();
        'merge: for (parent, children) in frontier.iter().zip(expansions) {
            for (op, key, child) in children {
                if nodes.contains_key(&key) {
                    continue;
                }
                if nodes.len() >= cfg.max_nodes {
                    truncated = true;
                    break 'merge;
                }
                nodes.insert(
                    key.clone(),
                    OrbitNode { graph: child, depth: depth + 1, parent: Some(parent.clone()), via: Some(op) },
                );
                next.push(key);
            }
        }
        if truncated {
            break;
        }
        frontier = next;
    }
    Ok(Orbit { nodes, truncated })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A sequence that replays from the start graph to the target.
    Found(Vec<RuleOp>),
    /// No sequence within the budget. Not a proof of inequivalence.
    NotFoundWithinBudget,
}

pub fn find_sequence(from: &WeightedGraph, to: &WeightedGraph, cfg: &OrbitConfig) -> Result<SearchOutcome, OrbitError> {
    find_sequence_with(from, to, cfg, Execution::default())
}

/// Half of a bidirectional search. For the forward side `link` holds the op
/// from the parent; for the backward side it holds the op that moves the
/// node one step closer to the target.
struct Side {
    links: HashMap<GraphKey, Option<(GraphKey, RuleOp)>>,
    graphs: HashMap<GraphKey, WeightedGraph>,
    frontier: Vec<GraphKey>,
    depth: usize,
}

impl Side {
    fn new(graph: &WeightedGraph) -> Self {
        let key = graph.canonical_bytes();
        Self {
            links: HashMap::from([(key.clone(), None)]),
            graphs: HashMap::from([(key.clone(), graph.clone())]),
            frontier: vec![key],
            depth: 0,
        }
    }

    /// Ops walking from `key` back to the side's root, in walk order.
    fn chain(&self, key: &[u8]) -> Vec<RuleOp> {
        let mut ops = Vec::new();
        let mut cur = key.to_vec();
        while let Some(Some((next, op))) = self.links.get(&cur) {
            ops.push(op.clone());
            cur = next.clone();
        }
        ops
    }
}

/// Bidirectional breadth-first search for a rule sequence turning `from`
/// into `to`. `max_depth` bounds the total sequence length and `max_nodes`
/// the combined size of both search trees.
pub fn find_sequence_with(
    from: &WeightedGraph,
    to: &WeightedGraph,
    cfg: &OrbitConfig,
    exec: Execution,
) -> Result<SearchOutcome, OrbitError> {
    cfg.validate()?;
    if from.n() != to.n() {
        return Err(GraphError::SizeMismatch(from.n(), to.n()).into());
    }
    if from == to {
        return Ok(SearchOutcome::Found(Vec::new()));
    }
    let moves = cfg.moves(from.n());
    let mut fwd = Side::new(from);
    let mut bwd = Side::new(to);

    while fwd.depth + bwd.depth < cfg.max_depth && !(fwd.frontier.is_empty() && bwd.frontier.is_empty()) {
        let forward = !fwd.frontier.is_empty() && (bwd.frontier.is_empty() || fwd.frontier.len() <= bwd.frontier.len());
        let (side, other) = if forward { (&mut fwd, &bwd) } else { (&mut bwd, &fwd) };

        let graphs: Vec<&WeightedGraph> = side.frontier.iter().map(|k| &side.graphs[k]).collect();
        let expansions = exec.map(&graphs, |g| {
            if forward {
                expand(g, &moves)
            } else {
                // Predecessors: p with op(p) = g, found through the inverse op.
                moves
                    .iter()
                    .filter_map(|op| {
                        let prev = op.inverse().apply(g).ok()?;
                        (op.apply(&prev).ok()? == **g).then(|| (op.clone(), prev.canonical_bytes(), prev))
                    })
                    .collect()
            }
        });

        let mut best: Option<Vec<RuleOp>> = None;
        let mut next = Vec::new();
        for (key, children) in side.frontier.iter().zip(expansions) {
            for (op, child_key, child) in children {
                if other.links.contains_key(&child_key) {
                    let path = if forward {
                        let mut p = side.chain(key);
                        p.reverse();
                        p.push(op.clone());
                        p.extend(other.chain(&child_key));
                        p
                    } else {
                        let mut p = other.chain(&child_key);
                        p.reverse();
                        p.push(op.clone());
                        p.extend(side.chain(key));
                        p
                    };
                    if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                        best = Some(path);
                    }
                }
                if side.links.contains_key(&child_key) || side.links.len() + other.links.len() >= cfg.max_nodes {
                    continue;
                }
                side.links.insert(child_key.clone(), Some((key.clone(), op)));
                side.graphs.insert(child_key.clone(), child);
                next.push(child_key);
            }
        }
        side.frontier = next;
        side.depth += 1;

        if let Some(path) = best {
            let replay = apply_sequence(from, &path).map_err(|_| OrbitError::ReplayFailed)?;
            if &replay.result != to {
                return Err(OrbitError::ReplayFailed);
            }
            return Ok(SearchOutcome::Found(path));
        }
    }
    Ok(SearchOutcome::NotFoundWithinBudget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitStats {
    pub node_count: usize,
    pub depth_histogram: BTreeMap<usize, usize>,
    pub truncated: bool,
    /// Smallest and largest `|w|` over all edges of all nodes; `None` when no
    /// node has an edge.
    pub min_weight_magnitude: Option<Scalar>,
    pub max_weight_magnitude: Option<Scalar>,
}

pub fn orbit_stats(orbit: &Orbit) -> OrbitStats {
    let mut depth_histogram = BTreeMap::new();
    let mut min: Option<Scalar> = None;
    let mut max: Option<Scalar> = None;
    for node in orbit.nodes.values() {
        *depth_histogram.entry(node.depth).or_insert(0) += 1;
        for (_, _, w) in node.graph.edges() {
            debug_assert!(!w.is_zero());
            let m = w.abs();
            if min.as_ref().is_none_or(|x| &m < x) {
                min = Some(m.clone());
            }
            if max.as_ref().is_none_or(|x| &m > x) {
                max = Some(m);
            }
        }
    }
    OrbitStats {
        node_count: orbit.len(),
        depth_histogram,
        truncated: orbit.truncated,
        min_weight_magnitude: min,
        max_weight_magnitude: max,
    }
}
