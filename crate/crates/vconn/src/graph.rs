use crate::error::{Error, Result};
use std::collections::VecDeque;

/// Read access shared by undirected graphs and weighted digraphs.
///
/// Undirected graphs report the same list for both directions and unit weights.
pub trait Digraph: Sync {
    fn order(&self) -> usize;
    fn out_nbrs(&self, u: usize) -> &[usize];
    fn in_nbrs(&self, u: usize) -> &[usize];
    fn vertex_weight(&self, v: usize) -> u64;
    fn max_weight(&self) -> u64;
    fn arc_count(&self) -> usize;

    fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out_nbrs(u).binary_search(&v).is_ok()
    }

    fn weight_of(&self, set: &[usize]) -> u64 {
        set.iter().map(|&v| self.vertex_weight(v)).sum()
    }
}

/// Simple undirected graph on `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph, silently merging repeated edges. Self-loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Invariant(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::Invariant(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_raw(adj))
    }

    /// Builds from per-vertex lists that are already symmetric.
    pub fn from_adjacency(adj: Vec<Vec<usize>>) -> Result<Self> {
        let n = adj.len();
        for (u, list) in adj.iter().enumerate() {
            for &v in list {
                if v >= n || v == u {
                    return Err(Error::Invariant(format!("bad neighbor {v} of {u}")));
                }
            }
        }
        let g = Self::from_raw(adj.clone());
        for (u, list) in adj.iter().enumerate() {
            if list.len() != g.adj[u].len() {
                return Err(Error::Invariant(format!("duplicate neighbor of {u}")));
            }
            if list.iter().any(|&v| !g.has_edge(v, u)) {
                return Err(Error::Invariant(format!("adjacency of {u} is not symmetric")));
            }
        }
        Ok(g)
    }

    fn from_raw(mut adj: Vec<Vec<usize>>) -> Self {
        let mut twice = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Graph { adj, m: twice / 2 }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// A vertex of minimum degree, smallest id on ties.
    pub fn min_degree_vertex(&self) -> Option<usize> {
        (0..self.n()).min_by_key(|&v| (self.degree(v), v))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.adj.iter().all(|l| l.len() + 1 == n)
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        components_avoiding(self, &[])
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Induced subgraph on `vertices` (sorted, distinct). Local id `i`
    /// corresponds to `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| local[w] != usize::MAX)
                    .map(|&w| local[w])
                    .collect()
            })
            .collect();
        Self::from_raw(adj)
    }

    pub fn with_extra_edges(&self, extra: &[(usize, usize)]) -> Graph {
        let mut adj = self.adj.clone();
        for &(u, v) in extra {
            adj[u].push(v);
            adj[v].push(u);
        }
        Self::from_raw(adj)
    }

    /// `N(A) = (⋃ N(v)) - A`.
    pub fn set_neighborhood(&self, set: &[usize]) -> Vec<usize> {
        set_neighborhood(self, set, Direction::Out)
    }

    /// `N[A] = A ∪ N(A)`, sorted.
    pub fn closed_neighborhood(&self, set: &[usize]) -> Vec<usize> {
        let mut out = self.set_neighborhood(set);
        out.extend_from_slice(set);
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl Digraph for Graph {
    fn order(&self) -> usize {
        self.n()
    }
    fn out_nbrs(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }
    fn in_nbrs(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }
    fn vertex_weight(&self, _v: usize) -> u64 {
        1
    }
    fn max_weight(&self) -> u64 {
        1
    }
    fn arc_count(&self) -> usize {
        2 * self.m
    }
}

/// Directed graph with positive integer vertex weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    weights: Vec<u64>,
    arcs: usize,
}

impl WeightedDigraph {
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)], weights: Vec<u64>) -> Result<Self> {
        if weights.len() != n {
            return Err(Error::Invariant(format!("{} weights for {n} vertices", weights.len())));
        }
        if let Some(v) = weights.iter().position(|&w| w == 0) {
            return Err(Error::Invariant(format!("vertex {v} has weight 0")));
        }
        let total: u128 = weights.iter().map(|&w| w as u128).sum();
        let cap = (n as u128 + 1) * (weights.iter().copied().max().unwrap_or(1) as u128) + 1;
        if total > u64::MAX as u128 / 4 || cap > u64::MAX as u128 / 4 {
            return Err(Error::Invariant("weights overflow 64-bit accumulation".into()));
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::Invariant(format!("arc ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::Invariant(format!("self-loop at {u}")));
            }
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        let mut count = 0;
        for l in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            l.sort_unstable();
            l.dedup();
        }
        for l in &out_adj {
            count += l.len();
        }
        Ok(WeightedDigraph { out_adj, in_adj, weights, arcs: count })
    }

    /// Symmetric digraph with unit weights built from an undirected graph.
    pub fn from_graph(g: &Graph) -> Self {
        let adj: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect();
        WeightedDigraph { out_adj: adj.clone(), in_adj: adj, weights: vec![1; g.n()], arcs: 2 * g.m() }
    }

    pub fn n(&self) -> usize {
        self.out_adj.len()
    }

    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out_adj[u]
    }

    pub fn in_neighbors(&self, u: usize) -> &[usize] {
        &self.in_adj[u]
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj.iter().enumerate().flat_map(|(u, l)| l.iter().map(move |&v| (u, v)))
    }

    /// `G^R`: every arc flipped.
    pub fn reverse(&self) -> Self {
        WeightedDigraph {
            out_adj: self.in_adj.clone(),
            in_adj: self.out_adj.clone(),
            weights: self.weights.clone(),
            arcs: self.arcs,
        }
    }

    /// Every ordered pair of distinct vertices is an arc.
    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.out_adj.iter().all(|l| l.len() + 1 == n)
    }

    pub fn is_strongly_connected(&self) -> bool {
        let n = self.n();
        if n <= 1 {
            return true;
        }
        reach_count(&self.out_adj, 0) == n && reach_count(&self.in_adj, 0) == n
    }

    /// Subdigraph keeping only the listed arcs; weights and vertex set unchanged.
    pub fn with_arcs(&self, arcs: &[(usize, usize)]) -> Self {
        WeightedDigraph::from_arcs(self.n(), arcs, self.weights.clone())
            .expect("arcs of a valid digraph stay valid")
    }
}

fn reach_count(adj: &[Vec<usize>], start: usize) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count
}

impl Digraph for WeightedDigraph {
    fn order(&self) -> usize {
        self.n()
    }
    fn out_nbrs(&self, u: usize) -> &[usize] {
        &self.out_adj[u]
    }
    fn in_nbrs(&self, u: usize) -> &[usize] {
        &self.in_adj[u]
    }
    fn vertex_weight(&self, v: usize) -> u64 {
        self.weights[v]
    }
    fn max_weight(&self) -> u64 {
        self.weights.iter().copied().max().unwrap_or(1)
    }
    fn arc_count(&self) -> usize {
        self.arcs
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Out,
    In,
}

/// Exact `N(A)` (or `N^out(A)` / `N^in(A)` for digraphs), sorted.
pub fn set_neighborhood<G: Digraph + ?Sized>(g: &G, set: &[usize], dir: Direction) -> Vec<usize> {
    let n = g.order();
    let mut inside = vec![false; n];
    for &v in set {
        inside[v] = true;
    }
    let mut mark = vec![false; n];
    let mut out = Vec::new();
    for &v in set {
        let list = match dir {
            Direction::Out => g.out_nbrs(v),
            Direction::In => g.in_nbrs(v),
        };
        for &w in list {
            if !inside[w] && !mark[w] {
                mark[w] = true;
                out.push(w);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Connected components of `g - removed`, each sorted, ordered by smallest member.
pub fn components_avoiding(g: &Graph, removed: &[usize]) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    for &v in removed {
        seen[v] = true;
    }
    let mut comps = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut comp = Vec::new();
        while let Some(u) = queue.pop_front() {
            comp.push(u);
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Size of the symmetric difference of two sorted lists.
pub fn sorted_symdiff_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    a.len() + b.len() - 2 * common
}

/// Sorted `a - b`.
pub fn sorted_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j >= b.len() || b[j] != x {
            out.push(x);
        }
    }
    out
}

/// `|N(u) △ N(v)|`.
pub fn symdiff_size(g: &Graph, u: usize, v: usize) -> usize {
    sorted_symdiff_len(g.neighbors(u), g.neighbors(v))
}

/// `w(N^out(u) △ N^out(v))`.
pub fn weighted_symdiff(d: &WeightedDigraph, u: usize, v: usize) -> u64 {
    let (a, b) = (d.out_neighbors(u), d.out_neighbors(v));
    let (mut i, mut j, mut total) = (0, 0, 0u64);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i] < b[j]) {
            total += d.weight(a[i]);
            i += 1;
        } else if i >= a.len() || b[j] < a[i] {
            total += d.weight(b[j]);
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    total
}

pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// `⌈log₂ n⌉` floored at 1 so products with it never vanish.
pub fn log2_at_least_one(n: usize) -> usize {
    ceil_log2(n).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &e).unwrap()
    }

    #[test]
    fn clique_symdiff_is_two() {
        let mut e = Vec::new();
        for u in 0..4 {
            for v in u + 1..4 {
                e.push((u, v));
            }
        }
        let g = Graph::from_edges(4, &e).unwrap();
        for u in 0..4 {
            assert_eq!(symdiff_size(&g, u, u), 0);
            for v in 0..4 {
                if u != v {
                    assert_eq!(symdiff_size(&g, u, v), 2);
                }
            }
        }
    }

    #[test]
    fn petersen_adjacent_symdiff() {
        let g = petersen();
        assert_eq!(symdiff_size(&g, 0, 1), 6);
        assert_eq!(g.m(), 15);
        assert_eq!(g.min_degree(), 3);
    }

    #[test]
    fn star_neighborhood() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(g.set_neighborhood(&[0]), vec![1, 2, 3, 4]);
        assert!(g.set_neighborhood(&[0, 1, 2, 3, 4]).is_empty());
    }

    #[test]
    fn rejects_self_loop() {
        assert!(Graph::from_edges(2, &[(1, 1)]).is_err());
    }

    #[test]
    fn asymmetric_adjacency_rejected() {
        assert!(Graph::from_adjacency(vec![vec![1], vec![]]).is_err());
        assert!(Graph::from_adjacency(vec![vec![1, 1], vec![0]]).is_err());
        assert!(Graph::from_adjacency(vec![vec![1], vec![0]]).is_ok());
    }

    #[test]
    fn digraph_reverse_and_strong_connectivity() {
        let d = WeightedDigraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)], vec![3, 1, 4]).unwrap();
        assert!(d.is_strongly_connected());
        let r = d.reverse();
        assert_eq!(r.out_neighbors(0), &[2]);
        let p = WeightedDigraph::from_arcs(3, &[(0, 1), (1, 2)], vec![1, 1, 1]).unwrap();
        assert!(!p.is_strongly_connected());
    }

    #[test]
    fn weighted_symdiff_identity() {
        let d = WeightedDigraph::from_arcs(4, &[(0, 2), (1, 2), (0, 3)], vec![1, 1, 5, 7]).unwrap();
        assert_eq!(weighted_symdiff(&d, 0, 0), 0);
        assert_eq!(weighted_symdiff(&d, 0, 1), 7);
    }

    #[test]
    fn log_helpers() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(8), 3);
        assert_eq!(log2_at_least_one(1), 1);
    }
}
