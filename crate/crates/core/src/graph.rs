//! Weighted graphs with exact rational edge weights.
//!
//! Vertices are labeled `1..=n`. The weight matrix is stored densely, kept
//! symmetric with a zero diagonal, and a zero weight is the same thing as a
//! missing edge.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::scalar::{parse_scalar, Scalar, ScalarParseError};

/// 1-based vertex label.
pub type Vertex = usize;

pub const FILE_HEADER: &str = "cvgraph v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("weights ({0}, {1}) and ({1}, {0}) differ")]
    Asymmetric(Vertex, Vertex),
    #[error("vertex count mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected header `{FILE_HEADER}`")]
    MissingHeader,
    #[error("expected `n <count>`")]
    MissingCount,
    #[error("malformed line `{0}`")]
    Malformed(String),
    #[error("edge line requires u < v, got {0} {1}")]
    Unordered(Vertex, Vertex),
    #[error("edge ({0}, {1}) listed twice with conflicting weights")]
    ConflictingEdge(Vertex, Vertex),
    #[error(transparent)]
    Scalar(#[from] ScalarParseError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    n: usize,
    weights: Vec<Scalar>,
}

impl WeightedGraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        Ok(Self {
            n,
            weights: vec![Scalar::zero(); n * n],
        })
    }

    /// Builds a graph from `(u, v, weight)` triples. Later triples overwrite
    /// earlier ones for the same pair.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Scalar)>,
    {
        let mut g = Self::new(n)?;
        for (u, v, w) in edges {
            g.set_weight_mut(u, v, w)?;
        }
        Ok(g)
    }

    /// Builds a graph from a full symmetric matrix with zero diagonal, indexed
    /// from 0.
    pub fn from_matrix(rows: &[Vec<Scalar>]) -> Result<Self, GraphError> {
        let n = rows.len();
        let mut g = Self::new(n)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GraphError::SizeMismatch(n, row.len()));
            }
            for (j, w) in row.iter().enumerate() {
                if i == j && !w.is_zero() {
                    return Err(GraphError::SelfLoop(i + 1));
                }
                g.weights[i * n + j] = w.clone();
            }
        }
        for u in 1..=n {
            for v in u + 1..=n {
                if g.weight(u, v) != g.weight(v, u) {
                    return Err(GraphError::Asymmetric(u, v));
                }
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v == 0 || v > self.n {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Weight of the pair `(u, v)`; zero when there is no edge.
    ///
    /// Panics if either vertex is out of range.
    pub fn weight(&self, u: Vertex, v: Vertex) -> &Scalar {
        assert!(u >= 1 && u <= self.n && v >= 1 && v <= self.n, "vertex out of range");
        &self.weights[(u - 1) * self.n + (v - 1)]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        !self.weight(u, v).is_zero()
    }

    /// Returns a copy with `weights[u][v] = weights[v][u] = w`. A zero weight
    /// removes the edge.
    pub fn set_edge(&self, u: Vertex, v: Vertex, w: Scalar) -> Result<Self, GraphError> {
        let mut g = self.clone();
        g.set_weight_mut(u, v, w)?;
        Ok(g)
    }

    pub(crate) fn set_weight_mut(&mut self, u: Vertex, v: Vertex, w: Scalar) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let n = self.n;
        self.weights[(u - 1) * n + (v - 1)] = w.clone();
        self.weights[(v - 1) * n + (u - 1)] = w;
        Ok(())
    }

    /// Sorted neighbors of `a`.
    pub fn neighborhood(&self, a: Vertex) -> Result<Vec<Vertex>, GraphError> {
        self.check_vertex(a)?;
        Ok((1..=self.n).filter(|&v| self.has_edge(a, v)).collect())
    }

    /// Row `a` of the weight matrix, 0-indexed by vertex.
    pub fn row(&self, a: Vertex) -> &[Scalar] {
        let start = (a - 1) * self.n;
        &self.weights[start..start + self.n]
    }

    /// Present edges `(u, v, w)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, &Scalar)> + '_ {
        (1..=self.n).flat_map(move |u| {
            (u + 1..=self.n).filter_map(move |v| {
                let w = self.weight(u, v);
                (!w.is_zero()).then_some((u, v, w))
            })
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Full scan of the structural invariants.
    pub fn is_well_formed(&self) -> bool {
        (1..=self.n).all(|u| {
            self.weight(u, u).is_zero() && (1..u).all(|v| self.weight(u, v) == self.weight(v, u))
        })
    }

    /// Deterministic encoding of `(n, weights)`: the vertex count followed by
    /// every upper-triangular weight in row-major order, reduced text form.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = format!("{};", self.n);
        for u in 1..=self.n {
            for v in u + 1..=self.n {
                out.push_str(&self.weight(u, v).to_string());
                out.push(',');
            }
        }
        out.into_bytes()
    }

    /// Canonical file text. Edges are sorted by `(u, v)`.
    pub fn serialize(&self) -> String {
        let mut out = format!("{FILE_HEADER}\nn {}\n", self.n);
        for (u, v, w) in self.edges() {
            out.push_str(&format!("e {u} {v} {w}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let err = |line: usize, kind: ParseErrorKind| ParseError { line, kind };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        match lines.next() {
            Some((_, FILE_HEADER)) => {}
            Some((line, _)) => return Err(err(line, ParseErrorKind::MissingHeader)),
            None => return Err(err(1, ParseErrorKind::MissingHeader)),
        }
        let (count_line, n) = match lines.next() {
            Some((line, l)) => {
                let mut parts = l.split_whitespace();
                match (parts.next(), parts.next().and_then(|c| c.parse::<usize>().ok()), parts.next()) {
                    (Some("n"), Some(n), None) => (line, n),
                    _ => return Err(err(line, ParseErrorKind::MissingCount)),
                }
            }
            None => return Err(err(2, ParseErrorKind::MissingCount)),
        };
        let mut g = Self::new(n).map_err(|e| err(count_line, e.into()))?;
        let mut seen = vec![false; n * n];

        for (line, l) in lines {
            let parts: Vec<&str> = l.split_whitespace().collect();
            let [tag, u, v, w] = parts[..] else {
                return Err(err(line, ParseErrorKind::Malformed(l.to_string())));
            };
            if tag != "e" {
                return Err(err(line, ParseErrorKind::Malformed(l.to_string())));
            }
            let (Ok(u), Ok(v)) = (u.parse::<Vertex>(), v.parse::<Vertex>()) else {
                return Err(err(line, ParseErrorKind::Malformed(l.to_string())));
            };
            if u == v {
                return Err(err(line, GraphError::SelfLoop(u).into()));
            }
            g.check_vertex(u).map_err(|e| err(line, e.into()))?;
            g.check_vertex(v).map_err(|e| err(line, e.into()))?;
            if u > v {
                return Err(err(line, ParseErrorKind::Unordered(u, v)));
            }
            let w = parse_scalar(w).map_err(|e| err(line, e.into()))?;
            let slot = (u - 1) * n + (v - 1);
            if seen[slot] && g.weight(u, v) != &w {
                return Err(err(line, ParseErrorKind::ConflictingEdge(u, v)));
            }
            seen[slot] = true;
            g.set_weight_mut(u, v, w).map_err(|e| err(line, e.into()))?;
        }
        Ok(g)
    }
}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightedGraph(n={}", self.n)?;
        for (u, v, w) in self.edges() {
            write!(f, ", {u}-{v}:{w}")?;
        }
        write!(f, ")")
    }
}
