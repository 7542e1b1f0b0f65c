//! Graphviz DOT rendering.

use crate::graph::WeightedGraph;

/// Undirected DOT text with one node line per vertex and the exact weight as
/// each edge label.
pub fn to_dot(graph: &WeightedGraph) -> String {
    let mut out = String::from("graph cvgraph {\n");
    for v in 1..=graph.n() {
        out.push_str(&format!("  {v};\n"));
    }
    for (u, v, w) in graph.edges() {
        out.push_str(&format!("  {u} -- {v} [label=\"{w}\"];\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn single_edge() {
        let g = WeightedGraph::from_edges(2, [(1, 2, ratio(3, 4))]).unwrap();
        assert_eq!(to_dot(&g), "graph cvgraph {\n  1;\n  2;\n  1 -- 2 [label=\"3/4\"];\n}\n");
    }

    #[test]
    fn isolated_nodes() {
        let dot = to_dot(&WeightedGraph::new(3).unwrap());
        assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with(';')).count(), 3);
        assert!(!dot.contains("--"));
    }
}
