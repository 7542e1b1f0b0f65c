#![allow(dead_code)]

use cvgraph::scalar::{int, ratio};
use cvgraph::{GaussianGate, PauliElement, Scalar, WeightedGraph};
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

/// Rational with numerator in `-9..=9` and denominator in `1..=9`.
pub fn rand_scalar<R: Rng>(rng: &mut R) -> Scalar {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

pub fn rand_nonzero_scalar<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let s = rand_scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn rand_positive_scalar<R: Rng>(rng: &mut R) -> Scalar {
    ratio(rng.gen_range(1..=9), rng.gen_range(1..=9))
}

/// Random graph on `n` vertices; each pair gets an edge with probability 1/2.
pub fn rand_graph<R: Rng>(rng: &mut R, n: usize) -> WeightedGraph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(0.5) {
                edges.push((u, v, rand_nonzero_scalar(rng)));
            }
        }
    }
    WeightedGraph::from_edges(n, edges).unwrap()
}

pub fn rand_pauli<R: Rng>(rng: &mut R, n: usize) -> PauliElement {
    PauliElement::from_parts(
        (0..n).map(|_| rand_scalar(rng)).collect(),
        (0..n).map(|_| rand_scalar(rng)).collect(),
        rand_scalar(rng),
    )
}

pub fn five_vertex() -> WeightedGraph {
    WeightedGraph::from_edges(
        5,
        [(1, 2, int(1)), (1, 3, int(2)), (1, 5, int(3)), (2, 5, int(1)), (3, 4, int(1)), (4, 5, int(2))],
    )
    .unwrap()
}

pub fn triangle() -> WeightedGraph {
    WeightedGraph::from_edges(3, [(1, 2, int(1)), (1, 3, int(1)), (2, 3, int(1))]).unwrap()
}

// proptest strategies

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=9).prop_map(|(p, q)| ratio(p, q))
}

pub fn positive_scalar() -> impl Strategy<Value = Scalar> {
    (1i64..=9, 1i64..=9).prop_map(|(p, q)| ratio(p, q))
}

pub fn graph_with(min_n: usize, max_n: usize) -> impl Strategy<Value = WeightedGraph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(proptest::option::weighted(0.5, scalar()), pairs).prop_map(move |ws| {
            let mut edges = Vec::new();
            let mut it = ws.into_iter();
            for u in 1..=n {
                for v in u + 1..=n {
                    if let Some(Some(w)) = it.next() {
                        edges.push((u, v, w));
                    }
                }
            }
            WeightedGraph::from_edges(n, edges).unwrap()
        })
    })
}

/// A graph together with a vertex of it.
pub fn graph_and_vertex(min_n: usize, max_n: usize) -> impl Strategy<Value = (WeightedGraph, usize)> {
    graph_with(min_n, max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), 1..=n)
    })
}

pub fn pauli(n: usize) -> impl Strategy<Value = PauliElement> {
    (
        proptest::collection::vec(scalar(), n),
        proptest::collection::vec(scalar(), n),
        scalar(),
    )
        .prop_map(|(s, t, phase)| PauliElement::from_parts(s, t, phase))
}

/// Any non-composite gate on `n ≥ 2` modes.
pub fn gate(n: usize) -> impl Strategy<Value = GaussianGate> {
    let mode = 1..=n;
    prop_oneof![
        (mode.clone(), scalar()).prop_map(|(mode, eta)| GaussianGate::PhaseZ { mode, eta }),
        (mode.clone(), scalar()).prop_map(|(mode, eta)| GaussianGate::PhaseX { mode, eta }),
        mode.clone().prop_map(|mode| GaussianGate::Fourier { mode }),
        mode.clone().prop_map(|mode| GaussianGate::FourierSquared { mode }),
        (mode.clone(), positive_scalar()).prop_map(|(mode, lambda)| GaussianGate::Scale { mode, lambda }),
        (mode.clone(), 1..n, scalar()).prop_map(move |(a, off, strength)| GaussianGate::ControlledZ {
            a,
            b: (a - 1 + off) % n + 1,
            strength
        }),
        (mode.clone(), scalar()).prop_map(|(mode, s)| GaussianGate::PauliX { mode, s }),
        (mode, scalar()).prop_map(|(mode, t)| GaussianGate::PauliZ { mode, t }),
    ]
}
