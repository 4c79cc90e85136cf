use super::keyed_rng;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::Graph;
use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

const TAG: u64 = 0x3a1c;
const DENSE_LIMIT: usize = 2048;

/// Induced subgraph of a `d`-regular host on `host` vertices, with the host's
/// certified normalized second eigenvalue `lambda`.
///
/// Disjoint `A, B` with `|A|·|B|·d >= 4·c²·n²` always have an edge between them.
#[derive(Clone, Debug, PartialEq)]
pub struct MixingGraph {
    pub graph: Graph,
    pub degree: usize,
    pub host: usize,
    pub lambda: f64,
    pub c: f64,
}

impl MixingGraph {
    pub fn guarantees_edge(&self, a: usize, b: usize) -> bool {
        let n = self.graph.n() as f64;
        (a * b * self.degree) as f64 >= 4.0 * self.c * self.c * n * n
    }
}

fn constant(lambda: f64, host: usize, n: usize, d: usize) -> f64 {
    lambda * host as f64 * (d as f64).sqrt() / (2.0 * n as f64) * (1.0 + 1e-9)
}

/// Mixing graph on `n` vertices with degree at most `d`, certified against
/// `cfg.mixing_c_target`.
pub fn build_mixing_graph(cfg: &Config, n: usize, d: usize) -> Result<MixingGraph> {
    if n < 2 || d == 0 {
        return Err(Error::Invariant(format!("mixing graph needs n >= 2 and d >= 1, got n={n} d={d}")));
    }
    if d >= n - 1 {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let lambda = if n > 2 { 1.0 / (n - 1) as f64 } else { 1.0 };
        let graph = Graph::from_edges(n, &edges)?;
        return Ok(MixingGraph { graph, degree: n - 1, host: n, lambda, c: constant(lambda, n, n, n - 1) });
    }
    let host = if n * d % 2 == 0 { n } else { n + 1 };
    let mut best: Option<MixingGraph> = None;
    for attempt in 0..cfg.seed_tries.min(16) {
        let mut rng = keyed_rng(cfg.seed, TAG, &[n as u64, d as u64, attempt]);
        let Some(edges) = random_regular(host, d, &mut rng) else { continue };
        let lambda = second_eigenvalue(host, d, &edges);
        let c = constant(lambda, host, n, d);
        if best.as_ref().is_none_or(|b| c < b.c) {
            let kept: Vec<(usize, usize)> = edges.iter().copied().filter(|&(u, v)| u < n && v < n).collect();
            let graph = Graph::from_edges(n, &kept)?;
            best = Some(MixingGraph { graph, degree: d, host, lambda, c });
        }
        if best.as_ref().is_some_and(|b| b.c <= cfg.mixing_c_target) {
            break;
        }
    }
    match best {
        Some(g) if g.c <= cfg.mixing_c_target => Ok(g),
        Some(g) => Err(Error::ConstructionFailed(format!("best mixing constant {:.3} above target at n={n} d={d}", g.c))),
        None => Err(Error::ConstructionFailed(format!("no {d}-regular graph found on {host} vertices"))),
    }
}

/// Random simple `d`-regular graph: pair up stubs one edge at a time, restarting when stuck.
fn random_regular(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    'restart: for _ in 0..50 {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(n * d / 2);
        while !stubs.is_empty() {
            let mut placed = false;
            for _ in 0..200 {
                let i = rng.gen_range(0..stubs.len());
                let j = rng.gen_range(0..stubs.len());
                let (u, v) = (stubs[i], stubs[j]);
                if i == j || u == v || seen.contains(&(u.min(v), u.max(v))) {
                    continue;
                }
                seen.insert((u.min(v), u.max(v)));
                edges.push((u.min(v), u.max(v)));
                let (hi, lo) = (i.max(j), i.min(j));
                stubs.swap_remove(hi);
                stubs.swap_remove(lo);
                placed = true;
                break;
            }
            if !placed {
                continue 'restart;
            }
        }
        return Some(edges);
    }
    None
}

/// `max(|lambda_2|, |lambda_n|)` of the normalized adjacency matrix.
fn second_eigenvalue(n: usize, d: usize, edges: &[(usize, usize)]) -> f64 {
    if n <= DENSE_LIMIT {
        let mut a = DMatrix::<f64>::zeros(n, n);
        for &(u, v) in edges {
            a[(u, v)] = 1.0 / d as f64;
            a[(v, u)] = 1.0 / d as f64;
        }
        let mut eig: Vec<f64> = a.symmetric_eigenvalues().iter().copied().collect();
        eig.sort_by(|x, y| y.partial_cmp(x).unwrap());
        // the top eigenvalue is 1 for a regular graph
        return eig[1..].iter().map(|x| x.abs()).fold(0.0, f64::max);
    }
    power_iteration(n, d, edges)
}

/// Largest `|eigenvalue|` on the complement of the all-ones vector, padded by 5%.
fn power_iteration(n: usize, d: usize, edges: &[(usize, usize)]) -> f64 {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut x: Vec<f64> = (0..n).map(|i| ((i * 7919 % 1013) as f64) - 506.0).collect();
    let mut est = 0.0;
    for _ in 0..500 {
        let mean = x.iter().sum::<f64>() / n as f64;
        x.iter_mut().for_each(|v| *v -= mean);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        x.iter_mut().for_each(|v| *v /= norm);
        // iterate with the square so negative eigenvalues converge too
        let step = |x: &[f64]| -> Vec<f64> { (0..n).map(|u| adj[u].iter().map(|&v| x[v]).sum::<f64>() / d as f64).collect() };
        let y = step(&step(&x));
        est = x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>().sqrt();
        x = y;
    }
    est * 1.05
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_when_degree_large() {
        let g = build_mixing_graph(&Config::default(), 6, 5).unwrap();
        assert_eq!(g.graph.m(), 15);
        assert!(g.guarantees_edge(2, 2));
    }

    #[test]
    fn sixty_four_eight() {
        let g = build_mixing_graph(&Config::default(), 64, 8).unwrap();
        assert!((0..64).all(|v| g.graph.degree(v) <= 8));
        assert!(g.lambda < 1.0);
        let x: Vec<f64> = (0..64).map(|v| g.graph.degree(v) as f64).collect();
        assert!(x.iter().all(|&d| d == 8.0));
        assert!((power_iteration(64, 8, &g.graph.edges().collect::<Vec<_>>()) - g.lambda * 1.05).abs() < 0.05);
    }
}
