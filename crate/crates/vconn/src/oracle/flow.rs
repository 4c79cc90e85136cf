//! Edmonds-Karp on a dense capacity matrix. Kept separate from
//! [`crate::maxflow`] so the two can check each other.

use crate::graph::Digraph;
use std::collections::VecDeque;

pub(crate) struct DenseFlow {
    size: usize,
    cap: Vec<u64>,
}

impl DenseFlow {
    /// Split network: vertex `v` is the pair `(v, n + v)`; `s` and `t` are uncut.
    pub(crate) fn split<G: Digraph + ?Sized>(g: &G, s: usize, t: usize) -> Self {
        let n = g.order();
        let size = 2 * n;
        let big = g.max_weight().saturating_mul(n as u64 + 2);
        let mut cap = vec![0u64; size * size];
        for v in 0..n {
            let c = if v == s || v == t { big } else { g.vertex_weight(v) };
            cap[v * size + n + v] = c;
        }
        for u in 0..n {
            for &v in g.out_nbrs(u) {
                cap[(n + u) * size + v] = big;
            }
        }
        DenseFlow { size, cap }
    }

    fn bfs(&self, src: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.size];
        parent[src] = src;
        let mut q = VecDeque::from([src]);
        while let Some(u) = q.pop_front() {
            let row = &self.cap[u * self.size..(u + 1) * self.size];
            for (v, &c) in row.iter().enumerate() {
                if c > 0 && parent[v] == usize::MAX {
                    parent[v] = u;
                    q.push_back(v);
                }
            }
        }
        parent
    }

    /// Shortest augmenting paths until none remain or the flow passes `limit`.
    pub(crate) fn run(&mut self, src: usize, dst: usize, limit: u64) -> Option<u64> {
        let mut flow = 0u64;
        loop {
            let parent = self.bfs(src);
            if parent[dst] == usize::MAX {
                return Some(flow);
            }
            let mut f = u64::MAX;
            let mut v = dst;
            while v != src {
                let u = parent[v];
                f = f.min(self.cap[u * self.size + v]);
                v = u;
            }
            let mut v = dst;
            while v != src {
                let u = parent[v];
                self.cap[u * self.size + v] -= f;
                self.cap[v * self.size + u] += f;
                v = u;
            }
            flow += f;
            if flow > limit {
                return None;
            }
        }
    }

    pub(crate) fn reachable(&self, src: usize) -> Vec<bool> {
        self.bfs(src).iter().map(|&p| p != usize::MAX).collect()
    }
}

/// Min `(s, t)` separator weight and set, or `None` past `limit`.
/// Caller guarantees `s != t` and no arc `s -> t`.
pub(crate) fn pair_separator<G: Digraph + ?Sized>(g: &G, s: usize, t: usize, limit: u64) -> Option<(u64, Vec<usize>)> {
    let n = g.order();
    let mut net = DenseFlow::split(g, s, t);
    let value = net.run(s, t, limit)?;
    let reach = net.reachable(s);
    let sep: Vec<usize> = (0..n).filter(|&v| reach[v] && !reach[n + v]).collect();
    Some((value, sep))
}
