//! Vertex-capacitated max flow by blocking flows on the split network.
//!
//! Vertex `v` becomes `in(v) = 2v` and `out(v) = 2v + 1` joined by an arc of
//! capacity `w(v)`; original arcs become `out(u) -> in(v)` with capacity
//! `n·W + 1`. The source, the sinks and the super-sink are never cut.

use crate::cut::{better, cut_from_separator, VertexCut};
use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph};
use crate::par;
use crate::stats::Ctx;
use std::collections::VecDeque;
use std::sync::atomic::{AtomicU64, Ordering};

const NONE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    Separator { value: u64, sep: Vec<usize> },
    /// Source adjacent to a sink; no vertex set separates them.
    NoSeparator,
}

struct Network {
    start: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u64>,
    rev: Vec<usize>,
}

impl Network {
    fn new(nodes: usize, arcs: &[(usize, usize, u64)]) -> Self {
        let mut deg = vec![0usize; nodes + 1];
        for &(u, v, _) in arcs {
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut start = vec![0usize; nodes + 1];
        for i in 0..nodes {
            start[i + 1] = start[i] + deg[i];
        }
        let total = start[nodes];
        let mut fill = start.clone();
        let mut to = vec![0; total];
        let mut cap = vec![0; total];
        let mut rev = vec![0; total];
        for &(u, v, c) in arcs {
            let (a, b) = (fill[u], fill[v]);
            fill[u] += 1;
            fill[v] += 1;
            to[a] = v;
            cap[a] = c;
            rev[a] = b;
            to[b] = u;
            cap[b] = 0;
            rev[b] = a;
        }
        Network { start, to, cap, rev }
    }

    fn nodes(&self) -> usize {
        self.start.len() - 1
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![NONE; self.nodes()];
        let mut q = VecDeque::new();
        level[s] = 0;
        q.push_back(s);
        while let Some(u) = q.pop_front() {
            for e in self.start[u]..self.start[u + 1] {
                let v = self.to[e];
                if self.cap[e] > 0 && level[v] == NONE {
                    level[v] = level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        level
    }

    /// One augmenting path in the level graph, advancing current-arc pointers.
    fn augment(&mut self, s: usize, t: usize, level: &mut [usize], it: &mut [usize]) -> u64 {
        let mut path: Vec<usize> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                let f = path.iter().map(|&e| self.cap[e]).min().unwrap_or(0);
                for &e in &path {
                    self.cap[e] -= f;
                    let r = self.rev[e];
                    self.cap[r] += f;
                }
                return f;
            }
            let mut advanced = false;
            while it[u] < self.start[u + 1] {
                let e = it[u];
                let v = self.to[e];
                if self.cap[e] > 0 && level[v] != NONE && level[v] == level[u] + 1 {
                    path.push(e);
                    u = v;
                    advanced = true;
                    break;
                }
                it[u] += 1;
            }
            if !advanced {
                if u == s {
                    return 0;
                }
                level[u] = NONE;
                let e = path.pop().unwrap();
                u = self.to[self.rev[e]];
                it[u] += 1;
            }
        }
    }

    /// Max flow value, or `None` once it exceeds `limit`.
    fn run(&mut self, s: usize, t: usize, limit: Option<u64>) -> Option<u64> {
        let mut flow = 0u64;
        loop {
            let mut level = self.levels(s);
            if level[t] == NONE {
                return Some(flow);
            }
            let mut it: Vec<usize> = self.start[..self.nodes()].to_vec();
            loop {
                let f = self.augment(s, t, &mut level, &mut it);
                if f == 0 {
                    break;
                }
                flow += f;
                if limit.is_some_and(|l| flow > l) {
                    return None;
                }
            }
        }
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let level = self.levels(s);
        level.iter().map(|&l| l != NONE).collect()
    }
}

/// Min separator between `s` and the set `sinks` (joined to a super-sink when
/// there is more than one). Returns `Ok(None)` if the flow exceeds `limit`.
fn separate<G: Digraph + ?Sized>(
    ctx: &Ctx,
    g: &G,
    s: usize,
    sinks: &[usize],
    limit: Option<u64>,
) -> Result<Option<Separation>> {
    let n = g.order();
    if sinks.is_empty() {
        return Err(Error::Invariant("empty sink set".into()));
    }
    if sinks.iter().any(|&t| t == s || t >= n) || s >= n {
        return Err(Error::Invariant(format!("bad source/sink pair at s={s}")));
    }
    if sinks.iter().any(|&t| g.has_arc(s, t)) {
        return Ok(Some(Separation::NoSeparator));
    }
    let inf = (n as u64) * g.max_weight() + 1;
    let mut uncut = vec![false; n];
    uncut[s] = true;
    for &t in sinks {
        uncut[t] = true;
    }
    let multi = sinks.len() > 1;
    let nodes = 2 * n + usize::from(multi);
    let mut arcs = Vec::with_capacity(n + g.arc_count() + sinks.len());
    for v in 0..n {
        arcs.push((2 * v, 2 * v + 1, if uncut[v] { inf } else { g.vertex_weight(v) }));
    }
    for u in 0..n {
        for &v in g.out_nbrs(u) {
            arcs.push((2 * u + 1, 2 * v, inf));
        }
    }
    let sink = if multi {
        for &t in sinks {
            arcs.push((2 * t, 2 * n, inf));
        }
        2 * n
    } else {
        2 * sinks[0]
    };
    ctx.stats.add(&ctx.stats.flow_calls, 1);
    ctx.stats.add(&ctx.stats.flow_edges, (n + g.arc_count()) as u64);
    let mut net = Network::new(nodes, &arcs);
    let Some(value) = net.run(2 * s, sink, limit) else {
        return Ok(None);
    };
    let reach = net.reachable(2 * s);
    let sep: Vec<usize> = (0..n).filter(|&v| reach[2 * v] && !reach[2 * v + 1]).collect();
    let weight = g.weight_of(&sep);
    if weight != value {
        return Err(Error::Invariant(format!("flow {value} differs from separator weight {weight}")));
    }
    Ok(Some(Separation::Separator { value, sep }))
}

/// Minimum `(s, t)`-separator.
pub fn min_st_separator<G: Digraph + ?Sized>(ctx: &Ctx, g: &G, s: usize, t: usize) -> Result<Separation> {
    Ok(separate(ctx, g, s, &[t], None)?.expect("unbounded flow"))
}

/// Like [`min_st_separator`] but gives up (`Ok(None)`) once the value exceeds `limit`.
pub fn min_st_separator_bounded<G: Digraph + ?Sized>(
    ctx: &Ctx,
    g: &G,
    s: usize,
    t: usize,
    limit: Option<u64>,
) -> Result<Option<Separation>> {
    separate(ctx, g, s, &[t], limit)
}

/// Minimum separator between `s` and a super-sink attached to every vertex of `set`.
pub fn min_s_to_set_separator<G: Digraph + ?Sized>(
    ctx: &Ctx,
    g: &G,
    s: usize,
    set: &[usize],
) -> Result<Separation> {
    Ok(separate(ctx, g, s, set, None)?.expect("unbounded flow"))
}

pub fn min_s_to_set_separator_bounded<G: Digraph + ?Sized>(
    ctx: &Ctx,
    g: &G,
    s: usize,
    set: &[usize],
    limit: Option<u64>,
) -> Result<Option<Separation>> {
    separate(ctx, g, s, set, limit)
}

/// Minimum `(s, t)` cut as a tri-partition with `s` on the left.
pub fn st_cut<G: Digraph + ?Sized>(
    ctx: &Ctx,
    g: &G,
    s: usize,
    t: usize,
    limit: Option<u64>,
) -> Result<Option<VertexCut>> {
    match separate(ctx, g, s, &[t], limit)? {
        Some(Separation::Separator { sep, .. }) => Ok(cut_from_separator(g, &sep, s)),
        _ => Ok(None),
    }
}

/// Best cut over a batch of `(s, t)` pairs, skipping adjacent pairs and
/// anything worse than `bound`. Flows run concurrently; each is abandoned once
/// it exceeds the best value seen so far, and ties break by [`VertexCut::rank`],
/// so the result does not depend on scheduling.
pub fn best_pair_cut<G: Digraph + ?Sized>(
    ctx: &Ctx,
    g: &G,
    pairs: &[(usize, usize)],
    bound: Option<u64>,
) -> Result<Option<VertexCut>> {
    let best = AtomicU64::new(bound.unwrap_or(u64::MAX));
    let results = par::map(pairs, |&(s, t)| -> Result<Option<VertexCut>> {
        if s == t || g.has_arc(s, t) {
            return Ok(None);
        }
        let limit = best.load(Ordering::Relaxed);
        let cut = st_cut(ctx, g, s, t, Some(limit))?;
        if let Some(c) = &cut {
            best.fetch_min(c.value, Ordering::Relaxed);
        }
        Ok(cut)
    });
    let mut out = None;
    for r in results {
        out = better(out, r?);
    }
    Ok(out.filter(|c| bound.map_or(true, |b| c.value <= b)))
}

/// `κ(a)`: the best cut separating `a` from some non-neighbor. `None` when
/// `N[a] = V`.
pub fn rooted_connectivity(ctx: &Ctx, g: &Graph, a: usize) -> Result<Option<VertexCut>> {
    let pairs: Vec<(usize, usize)> = (0..g.n()).filter(|&t| t != a && !g.has_edge(a, t)).map(|t| (a, t)).collect();
    best_pair_cut(ctx, g, &pairs, None)
}

/// The cut `(v, N(v), rest)` for a minimum-degree vertex, if `v` has a non-neighbor.
pub fn min_degree_cut(g: &Graph) -> Option<VertexCut> {
    let v = g.min_degree_vertex()?;
    cut_from_separator(g, g.neighbors(v), v)
}

/// Exact connectivity of an undirected graph by flows over all non-adjacent
/// pairs. `None` for complete graphs and graphs with fewer than two vertices.
pub fn connectivity_by_pairs(ctx: &Ctx, g: &Graph) -> Result<Option<VertexCut>> {
    let n = g.n();
    if n < 2 || g.is_complete() {
        return Ok(None);
    }
    let comps = g.components();
    if comps.len() > 1 {
        let left = comps[0].clone();
        let right: Vec<usize> = comps[1..].iter().flatten().copied().collect::<Vec<_>>();
        let mut right = right;
        right.sort_unstable();
        return Ok(Some(VertexCut { left, sep: Vec::new(), right, value: 0 }));
    }
    let bound = min_degree_cut(g);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|s| (s + 1..n).map(move |t| (s, t)))
        .filter(|&(s, t)| !g.has_edge(s, t))
        .collect();
    let found = best_pair_cut(ctx, g, &pairs, bound.as_ref().map(|c| c.value))?;
    Ok(better(bound, found))
}

/// Weak separator of a terminal set `T`: the cheapest cut `(A, C, B)` of `G`
/// with `T ⊆ A ∪ C`. `None` when no such cut exists.
pub fn weak_separator(ctx: &Ctx, g: &Graph, terms: &[usize]) -> Result<Option<VertexCut>> {
    let n = g.n();
    if terms.is_empty() || terms.len() >= n {
        return Err(Error::Invariant("terminal set must be nonempty and proper".into()));
    }
    let mut in_t = vec![false; n];
    for &t in terms {
        in_t[t] = true;
    }
    let hub = n;
    let hub_edges: Vec<(usize, usize)> = terms.iter().map(|&t| (t, hub)).collect();
    let mut adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    adj.push(Vec::new());
    let gz = Graph::from_adjacency(adj)?.with_extra_edges(&hub_edges);
    let outside: Vec<usize> = (0..n).filter(|&b| !in_t[b]).collect();
    let lift = |sep: Vec<usize>| -> Option<VertexCut> {
        if terms.iter().all(|t| sep.binary_search(t).is_ok()) {
            return None;
        }
        let c = cut_from_separator(&gz, &sep, hub)?;
        let left: Vec<usize> = c.left.into_iter().filter(|&v| v != hub).collect();
        let value = sep.len() as u64;
        Some(VertexCut { left, sep, right: c.right, value })
    };

    let phase: Vec<Result<Separation>> = par::map(&outside, |&b| min_st_separator(ctx, &gz, hub, b));
    let mut lower = u64::MAX;
    let mut best = None;
    for r in phase {
        if let Separation::Separator { value, sep } = r? {
            lower = lower.min(value);
            best = better(best, lift(sep));
        }
    }
    if best.as_ref().is_some_and(|c| c.value == lower) {
        return Ok(best);
    }

    let pairs: Vec<(usize, usize)> = terms
        .iter()
        .flat_map(|&a| outside.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| !g.has_edge(a, b))
        .collect();
    let bound = best.as_ref().map(|c| c.value);
    let forced: Vec<Result<Option<Separation>>> = par::map(&pairs, |&(a, b)| {
        min_s_to_set_separator_bounded(ctx, &gz, b, &[hub, a], bound)
    });
    for r in forced {
        if let Some(Separation::Separator { sep, .. }) = r? {
            best = better(best, lift(sep));
        }
    }

    // Cuts whose separator swallows all of T.
    let sub = g.induced(&outside);
    if let Some(c) = connectivity_by_pairs(ctx, &sub)? {
        let map = |s: &[usize]| s.iter().map(|&i| outside[i]).collect::<Vec<_>>();
        let mut sep = map(&c.sep);
        sep.extend_from_slice(terms);
        sep.sort_unstable();
        let value = sep.len() as u64;
        best = better(best, Some(VertexCut { left: map(&c.left), sep, right: map(&c.right), value }));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut::validate_cut;
    use crate::graph::WeightedDigraph;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, &e).unwrap()
    }

    fn value(s: Separation) -> Option<u64> {
        match s {
            Separation::Separator { value, .. } => Some(value),
            Separation::NoSeparator => None,
        }
    }

    #[test]
    fn cycle_antipodal() {
        let ctx = Ctx::default();
        assert_eq!(value(min_st_separator(&ctx, &cycle(6), 0, 3).unwrap()), Some(2));
    }

    #[test]
    fn adjacent_has_no_separator() {
        let ctx = Ctx::default();
        assert_eq!(min_st_separator(&ctx, &cycle(6), 0, 1).unwrap(), Separation::NoSeparator);
        assert!(min_st_separator(&ctx, &cycle(6), 2, 2).is_err());
    }

    #[test]
    fn petersen_nonadjacent_pairs() {
        let ctx = Ctx::default();
        let g = petersen();
        for s in 0..10 {
            for t in 0..10 {
                if s != t && !g.has_edge(s, t) {
                    assert_eq!(value(min_st_separator(&ctx, &g, s, t).unwrap()), Some(3));
                }
            }
        }
    }

    #[test]
    fn set_sink_cases() {
        let ctx = Ctx::default();
        let g = cycle(6);
        assert_eq!(min_s_to_set_separator(&ctx, &g, 0, &[3]).unwrap(), min_st_separator(&ctx, &g, 0, 3).unwrap());
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(min_s_to_set_separator(&ctx, &star, 0, &[1, 2]).unwrap(), Separation::NoSeparator);
    }

    #[test]
    fn rooted_cases() {
        let ctx = Ctx::default();
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let c = rooted_connectivity(&ctx, &star, 1).unwrap().unwrap();
        assert_eq!((c.value, c.sep.clone()), (1, vec![0]));
        let mut e = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                if (u, v) != (0, 1) {
                    e.push((u, v));
                }
            }
        }
        let k5e = Graph::from_edges(5, &e).unwrap();
        assert_eq!(rooted_connectivity(&ctx, &k5e, 0).unwrap().unwrap().value, 3);
        assert!(rooted_connectivity(&ctx, &k5e, 2).unwrap().is_none());
    }

    #[test]
    fn weak_separator_c5() {
        let ctx = Ctx::default();
        let c = weak_separator(&ctx, &cycle(5), &[0]).unwrap().unwrap();
        assert_eq!(c.value, 2);
        assert!(validate_cut(&cycle(5), &c));
        assert!(!c.right.contains(&0));
    }

    #[test]
    fn weighted_directed_separator() {
        let ctx = Ctx::default();
        // 0 -> {1,2} -> 3, weights 5 and 2
        let d = WeightedDigraph::from_arcs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], vec![1, 5, 2, 1]).unwrap();
        assert_eq!(value(min_st_separator(&ctx, &d, 0, 3).unwrap()), Some(7));
        assert_eq!(value(min_st_separator_bounded(&ctx, &d, 0, 3, Some(6)).unwrap().unwrap_or(Separation::NoSeparator)), None);
        let c = st_cut(&ctx, &d, 0, 3, None).unwrap().unwrap();
        assert!(validate_cut(&d, &c));
    }

    #[test]
    fn connectivity_examples() {
        let ctx = Ctx::default();
        assert_eq!(connectivity_by_pairs(&ctx, &petersen()).unwrap().unwrap().value, 3);
        let disc = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(connectivity_by_pairs(&ctx, &disc).unwrap().unwrap().value, 0);
    }
}
