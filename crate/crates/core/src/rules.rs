//! Graph rewrite rules for local Gaussian operations.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use thiserror::Error;

use crate::gate::GaussianGate;
use crate::graph::{GraphError, Vertex, WeightedGraph};
use crate::pauli::expand_lg;
use crate::scalar::{is_positive, parse_scalar, Scalar, ScalarParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(Scalar),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("op {} (`{}`)", .index + 1, .op)]
pub struct SequenceError {
    pub index: usize,
    pub op: Box<RuleOp>,
    pub source: RuleError,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpParseError {
    #[error("unknown op `{0}`")]
    UnknownOp(String),
    #[error("`{op}` takes {expected} argument(s)")]
    Arity { op: &'static str, expected: usize },
    #[error("invalid vertex `{0}`")]
    BadVertex(String),
    #[error(transparent)]
    Scalar(#[from] ScalarParseError),
    #[error("line {line}")]
    AtLine { line: usize, source: Box<OpParseError> },
}

/// One application of a rewrite rule.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RuleOp {
    /// Local Gaussian composite at `pivot` with strength `delta`.
    Lg { pivot: Vertex, delta: Scalar },
    /// `F²` on `vertex`.
    F2 { vertex: Vertex },
    /// Squeezer on `vertex` scaling incident weights by `lambda > 0`.
    Scale { vertex: Vertex, lambda: Scalar },
}

impl RuleOp {
    pub fn vertex(&self) -> Vertex {
        match *self {
            Self::Lg { pivot, .. } => pivot,
            Self::F2 { vertex } | Self::Scale { vertex, .. } => vertex,
        }
    }

    /// The op that undoes this one at the rule level.
    pub fn inverse(&self) -> Self {
        match self {
            Self::Lg { pivot, delta } => Self::Lg { pivot: *pivot, delta: -delta },
            Self::F2 { vertex } => Self::F2 { vertex: *vertex },
            Self::Scale { vertex, lambda } => Self::Scale { vertex: *vertex, lambda: lambda.recip() },
        }
    }

    pub fn apply(&self, graph: &WeightedGraph) -> Result<WeightedGraph, RuleError> {
        match self {
            Self::Lg { pivot, delta } => apply_lg_rule(graph, *pivot, delta),
            Self::F2 { vertex } => apply_f2_rule(graph, *vertex),
            Self::Scale { vertex, lambda } => apply_scale_rule(graph, *vertex, lambda),
        }
    }

    /// Gaussian gates implementing this op on the state of `graph`.
    pub fn gates(&self, graph: &WeightedGraph) -> Result<Vec<GaussianGate>, RuleError> {
        graph.check_vertex(self.vertex())?;
        Ok(match self {
            Self::Lg { pivot, delta } => expand_lg(graph, *pivot, delta)?,
            Self::F2 { vertex } => vec![GaussianGate::FourierSquared { mode: *vertex }],
            Self::Scale { vertex, lambda } => {
                if !is_positive(lambda) {
                    return Err(RuleError::NonPositiveScale(lambda.clone()));
                }
                vec![GaussianGate::Scale { mode: *vertex, lambda: lambda.clone() }]
            }
        })
    }
}

impl fmt::Display for RuleOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Lg { pivot, delta } => write!(f, "lg {pivot} {delta}"),
            Self::F2 { vertex } => write!(f, "f2 {vertex}"),
            Self::Scale { vertex, lambda } => write!(f, "scale {vertex} {lambda}"),
        }
    }
}

impl FromStr for RuleOp {
    type Err = OpParseError;

    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let vertex = |text: &str| text.parse::<Vertex>().map_err(|_| OpParseError::BadVertex(text.to_string()));
        match parts.as_slice() {
            ["lg", a, d] => Ok(Self::Lg { pivot: vertex(a)?, delta: parse_scalar(d)? }),
            ["lg", ..] => Err(OpParseError::Arity { op: "lg", expected: 2 }),
            ["f2", a] => Ok(Self::F2 { vertex: vertex(a)? }),
            ["f2", ..] => Err(OpParseError::Arity { op: "f2", expected: 1 }),
            ["scale", a, l] => Ok(Self::Scale { vertex: vertex(a)?, lambda: parse_scalar(l)? }),
            ["scale", ..] => Err(OpParseError::Arity { op: "scale", expected: 2 }),
            [other, ..] => Err(OpParseError::UnknownOp(other.to_string())),
            [] => Err(OpParseError::UnknownOp(String::new())),
        }
    }
}

/// Parses an op script: one op per line, `#` comments and blank lines ignored.
pub fn parse_ops(text: &str) -> Result<Vec<RuleOp>, OpParseError> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(line, l)| {
            l.parse().map_err(|e| OpParseError::AtLine { line, source: Box::new(e) })
        })
        .collect()
}

pub fn format_ops(ops: &[RuleOp]) -> String {
    ops.iter().map(|op| format!("{op}\n")).collect()
}

/// `Ω'_{bc} = Ω_{bc} − Ω_{ab} Ω_{ac} δ` for every pair `b < c` of neighbors
/// of `a`. Edges incident to `a` and outside the neighborhood are untouched;
/// zero results drop the edge.
pub fn apply_lg_rule(graph: &WeightedGraph, a: Vertex, delta: &Scalar) -> Result<WeightedGraph, RuleError> {
    let neighbors = graph.neighborhood(a)?;
    let mut out = graph.clone();
    if delta.is_zero() {
        return Ok(out);
    }
    for (i, &b) in neighbors.iter().enumerate() {
        let wab = graph.weight(a, b);
        for &c in &neighbors[i + 1..] {
            let updated = graph.weight(b, c) - wab * graph.weight(a, c) * delta;
            out.set_weight_mut(b, c, updated)?;
        }
    }
    Ok(out)
}

/// Negates every weight incident to `a`.
pub fn apply_f2_rule(graph: &WeightedGraph, a: Vertex) -> Result<WeightedGraph, RuleError> {
    let mut out = graph.clone();
    for b in graph.neighborhood(a)? {
        out.set_weight_mut(a, b, -graph.weight(a, b))?;
    }
    Ok(out)
}

/// Multiplies every weight incident to `a` by `lambda > 0`.
pub fn apply_scale_rule(graph: &WeightedGraph, a: Vertex, lambda: &Scalar) -> Result<WeightedGraph, RuleError> {
    if !is_positive(lambda) {
        return Err(RuleError::NonPositiveScale(lambda.clone()));
    }
    let mut out = graph.clone();
    for b in graph.neighborhood(a)? {
        out.set_weight_mut(a, b, graph.weight(a, b) * lambda)?;
    }
    Ok(out)
}

/// Result of folding a list of ops over a graph.
#[derive(Debug, Clone)]
pub struct SequenceTrace {
    pub result: WeightedGraph,
    /// Canonical bytes of each intermediate graph, starting with the input.
    pub steps: Vec<Vec<u8>>,
    /// Every intermediate graph, starting with the input.
    pub graphs: Vec<WeightedGraph>,
}

pub fn apply_sequence(graph: &WeightedGraph, ops: &[RuleOp]) -> Result<SequenceTrace, SequenceError> {
    let mut graphs = vec![graph.clone()];
    let mut current = graph.clone();
    for (index, op) in ops.iter().enumerate() {
        current = op.apply(&current).map_err(|source| SequenceError {
            index,
            op: Box::new(op.clone()),
            source,
        })?;
        graphs.push(current.clone());
    }
    Ok(SequenceTrace {
        steps: graphs.iter().map(WeightedGraph::canonical_bytes).collect(),
        result: current,
        graphs,
    })
}
