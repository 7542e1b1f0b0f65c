mod common;

use std::collections::BTreeSet;

use common::*;
use cvgraph::exec::Execution;
use cvgraph::orbit::{explore_with, orbit_stats};
use cvgraph::rules::{apply_sequence, RuleOp};
use cvgraph::scalar::int;
use cvgraph::{
    find_sequence, graph_nullifier_matrix, recover_graph, transport, GaussianGate, OrbitConfig, Scalar,
    SearchOutcome, WeightedGraph,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// LG gates built straight from the weight matrix.
fn lg_gates(g: &WeightedGraph, a: usize, delta: &Scalar) -> Vec<GaussianGate> {
    let mut gates = vec![GaussianGate::PhaseX { mode: a, eta: -delta }];
    for b in 1..=g.n() {
        let w = g.weight(a, b);
        if !w.is_zero() {
            gates.push(GaussianGate::PhaseZ { mode: b, eta: w * w * delta });
        }
    }
    gates
}

/// Depth-limited enumeration whose only move generator is symplectic
/// transport followed by graph recovery.
pub fn brute_force_lg_orbit(root: &WeightedGraph, deltas: &[Scalar], depth: usize) -> BTreeSet<Vec<u8>> {
    let mut seen = BTreeSet::from([root.canonical_bytes()]);
    let mut layer = vec![root.clone()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for g in &layer {
            for a in 1..=g.n() {
                for delta in deltas {
                    let moved = transport(&graph_nullifier_matrix(g), &lg_gates(g, a, delta)).unwrap();
                    let h = recover_graph(&moved).unwrap();
                    if seen.insert(h.canonical_bytes()) {
                        next.push(h);
                    }
                }
            }
        }
        layer = next;
    }
    seen
}

fn lg_cfg(deltas: Vec<Scalar>, depth: usize) -> OrbitConfig {
    OrbitConfig { delta_set: deltas, max_depth: depth, ..OrbitConfig::default() }
}

#[test]
fn triangle_orbit_matches_brute_force() {
    let deltas = vec![int(1), int(-1)];
    let expected = brute_force_lg_orbit(&triangle(), &deltas, 3);
    for exec in [Execution::Sequential, Execution::Parallel] {
        let orbit = explore_with(&triangle(), &lg_cfg(deltas.clone(), 3), exec).unwrap();
        let got: BTreeSet<Vec<u8>> = orbit.nodes.keys().cloned().collect();
        assert_eq!(got, expected);
        assert_eq!(orbit_stats(&orbit).node_count, expected.len());
    }
}

#[test]
fn random_orbits_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..10 {
        let n = rng.gen_range(2..=4);
        let g = rand_graph(&mut rng, n);
        let deltas = vec![rand_nonzero_scalar(&mut rng)];
        let expected = brute_force_lg_orbit(&g, &deltas, 2);
        let orbit = explore_with(&g, &lg_cfg(deltas, 2), Execution::Parallel).unwrap();
        let got: BTreeSet<Vec<u8>> = orbit.nodes.keys().cloned().collect();
        assert_eq!(got, expected);
    }
}

#[test]
fn sampled_paths_replay() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cfg = OrbitConfig {
        delta_set: vec![int(1), int(-1)],
        lambda_set: vec![int(2)],
        include_f2: true,
        include_scale: true,
        max_depth: 3,
        max_nodes: 2000,
    };
    let orbit = explore_with(&five_vertex(), &cfg, Execution::Parallel).unwrap();
    for _ in 0..50 {
        let i = rng.gen_range(0..orbit.len());
        let (key, node) = orbit.nodes.get_index(i).unwrap();
        let path = orbit.path_to(key).unwrap();
        assert_eq!(apply_sequence(&five_vertex(), &path).unwrap().result, node.graph);
    }
}

#[test]
fn runs_are_deterministic() {
    let cfg = OrbitConfig { include_f2: true, max_nodes: 500, ..lg_cfg(vec![int(1), int(-1), int(2)], 4) };
    let a = explore_with(&five_vertex(), &cfg, Execution::Parallel).unwrap();
    let b = explore_with(&five_vertex(), &cfg, Execution::Parallel).unwrap();
    let c = explore_with(&five_vertex(), &cfg, Execution::Sequential).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert!(a.truncated);
    assert_eq!(a.len(), 500);
}

#[test]
fn inverse_moves_give_symmetric_reachability() {
    let cfg = lg_cfg(vec![int(1), int(-1)], 2);
    let orbit = explore_with(&triangle(), &cfg, Execution::Parallel).unwrap();
    let search = OrbitConfig { max_depth: 4, ..cfg.clone() };
    for (_, node) in orbit.nodes.iter().step_by(3).take(6) {
        for target in [&orbit.root().graph, &node.graph] {
            match find_sequence(&node.graph, target, &search).unwrap() {
                SearchOutcome::Found(path) => assert_eq!(&apply_sequence(&node.graph, &path).unwrap().result, target),
                SearchOutcome::NotFoundWithinBudget => panic!("node cannot reach back"),
            }
        }
    }
}

#[test]
fn find_sequence_validates_random_targets() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let cfg = OrbitConfig {
        delta_set: vec![int(1), int(-1)],
        lambda_set: vec![int(2), cvgraph::scalar::ratio(1, 2)],
        include_f2: true,
        include_scale: true,
        max_depth: 4,
        max_nodes: 50_000,
    };
    for _ in 0..10 {
        let g = rand_graph(&mut rng, 4);
        let moves = cfg.moves(4);
        let ops: Vec<RuleOp> = (0..3).map(|_| moves[rng.gen_range(0..moves.len())].clone()).collect();
        let target = apply_sequence(&g, &ops).unwrap().result;
        let SearchOutcome::Found(path) = find_sequence(&g, &target, &cfg).unwrap() else {
            panic!("target built from 3 moves not found");
        };
        assert!(path.len() <= 3);
        assert_eq!(apply_sequence(&g, &path).unwrap().result, target);
    }
}
