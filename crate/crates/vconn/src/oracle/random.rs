//! Seeded random instances shared by tests, benches and the CLI.

use crate::graph::{Graph, WeightedDigraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `G(n, p)` from a seed.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p.clamp(0.0, 1.0)))
        .collect();
    Graph::from_edges(n, &edges).expect("simple edges")
}

/// A connected graph: a random spanning tree plus `G(n, p)` edges.
pub fn connected_gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7bee);
    let tree: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let g = gnp(n, p, seed);
    let extra: Vec<(usize, usize)> = tree.into_iter().filter(|&(u, v)| !g.has_edge(u, v)).collect();
    g.with_extra_edges(&extra)
}

/// Random digraph with arc probability `p` and weights in `1..=max_weight`.
pub fn weighted_digraph(n: usize, p: f64, max_weight: u64, seed: u64) -> WeightedDigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p.clamp(0.0, 1.0)) {
                arcs.push((u, v));
            }
        }
    }
    let weights = (0..n).map(|_| rng.gen_range(1..=max_weight.max(1))).collect();
    WeightedDigraph::from_arcs(n, &arcs, weights).expect("simple arcs")
}

/// A strongly connected digraph: a random Hamiltonian cycle plus random arcs.
pub fn strongly_connected(n: usize, p: f64, max_weight: u64, seed: u64) -> WeightedDigraph {
    let d = weighted_digraph(n, p, max_weight, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc1c1e);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut arcs: Vec<(usize, usize)> = d.arcs().collect();
    if n > 1 {
        arcs.extend((0..n).map(|i| (order[i], order[(i + 1) % n])));
    }
    arcs.sort_unstable();
    arcs.dedup();
    WeightedDigraph::from_arcs(n, &arcs, d.weights().to_vec()).expect("simple arcs")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic_and_connected() {
        assert_eq!(gnp(12, 0.3, 4), gnp(12, 0.3, 4));
        for s in 0..10 {
            assert!(connected_gnp(15, 0.05, s).is_connected());
            assert!(strongly_connected(9, 0.1, 5, s).is_strongly_connected());
        }
    }
}
