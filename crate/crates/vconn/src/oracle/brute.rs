use super::flow::pair_separator;
use crate::cut::VertexCut;
use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph};

pub const UNWEIGHTED_LIMIT: usize = 64;
pub const WEIGHTED_LIMIT: usize = 24;
pub const SUBSET_LIMIT: usize = 18;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairKappa {
    Value(u64),
    NoSeparator,
}

/// `κ(s, t)` by augmenting paths on a dense matrix.
pub fn brute_pair_kappa<G: Digraph + ?Sized>(g: &G, s: usize, t: usize) -> PairKappa {
    assert_ne!(s, t, "pair must be distinct");
    if g.out_nbrs(s).contains(&t) {
        return PairKappa::NoSeparator;
    }
    PairKappa::Value(pair_separator(g, s, t, u64::MAX).expect("unbounded").0)
}

fn reach<G: Digraph + ?Sized>(g: &G, s: usize, blocked: &[bool]) -> Vec<bool> {
    let mut seen = vec![false; g.order()];
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(u) = stack.pop() {
        for &v in g.out_nbrs(u) {
            if !seen[v] && !blocked[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

fn cut_of<G: Digraph + ?Sized>(g: &G, sep: Vec<usize>, s: usize) -> VertexCut {
    let n = g.order();
    let mut blocked = vec![false; n];
    for &v in &sep {
        blocked[v] = true;
    }
    let seen = reach(g, s, &blocked);
    let left = (0..n).filter(|&v| seen[v]).collect();
    let right = (0..n).filter(|&v| !seen[v] && !blocked[v]).collect();
    let value = sep.iter().map(|&v| g.vertex_weight(v)).sum();
    VertexCut { left, sep, right, value }
}

/// Exact connectivity over all ordered non-adjacent pairs. `Ok(None)` means
/// every ordered pair is an arc (complete).
pub fn brute_kappa_guarded<G: Digraph + ?Sized>(g: &G, limit: usize) -> Result<Option<VertexCut>> {
    let n = g.order();
    if n > limit {
        return Err(Error::SizeGuard { n, limit });
    }
    if n < 2 {
        return Ok(None);
    }
    let none = vec![false; n];
    for s in 0..n {
        let seen = reach(g, s, &none);
        if seen.iter().any(|&x| !x) {
            return Ok(Some(cut_of(g, Vec::new(), s)));
        }
    }
    let mut best: Option<(u64, Vec<usize>, usize)> = None;
    for s in 0..n {
        for t in 0..n {
            if s == t || g.out_nbrs(s).contains(&t) {
                continue;
            }
            let limit = best.as_ref().map_or(u64::MAX, |b| b.0);
            if let Some((v, sep)) = pair_separator(g, s, t, limit) {
                if best.as_ref().map_or(true, |b| v < b.0) {
                    best = Some((v, sep, s));
                }
            }
        }
    }
    Ok(best.map(|(_, sep, s)| cut_of(g, sep, s)))
}

/// Undirected guard `n <= 64`.
pub fn brute_kappa(g: &Graph) -> Result<Option<VertexCut>> {
    brute_kappa_guarded(g, UNWEIGHTED_LIMIT)
}

/// Weighted-directed guard `n <= 24`.
pub fn brute_kappa_weighted<G: Digraph + ?Sized>(g: &G) -> Result<Option<VertexCut>> {
    brute_kappa_guarded(g, WEIGHTED_LIMIT)
}

fn strongly_connected_without<G: Digraph + ?Sized>(g: &G, removed: &[bool]) -> bool {
    let n = g.order();
    let Some(s) = (0..n).find(|&v| !removed[v]) else { return true };
    let fwd = reach(g, s, removed);
    if (0..n).any(|v| !removed[v] && !fwd[v]) {
        return false;
    }
    // backward reachability
    let mut seen = vec![false; n];
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(u) = stack.pop() {
        for &v in g.in_nbrs(u) {
            if !seen[v] && !removed[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    (0..n).all(|v| removed[v] || seen[v])
}

/// Connectivity by enumerating every vertex subset. Shares nothing with the
/// flow code; used to cross-check it on tiny inputs.
pub fn subset_kappa<G: Digraph + ?Sized>(g: &G) -> Result<Option<u64>> {
    let n = g.order();
    if n > SUBSET_LIMIT {
        return Err(Error::SizeGuard { n, limit: SUBSET_LIMIT });
    }
    let mut best: Option<u64> = None;
    for mask in 0u32..(1u32 << n) {
        if (n as u32) - mask.count_ones() < 2 {
            continue;
        }
        let removed: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        let w: u64 = (0..n).filter(|&v| removed[v]).map(|v| g.vertex_weight(v)).sum();
        if best.is_some_and(|b| w >= b) {
            continue;
        }
        if !strongly_connected_without(g, &removed) {
            best = Some(w);
        }
    }
    Ok(best)
}

/// Weak separator value by enumeration: the smallest `|C|` such that some
/// component of `G - C` avoids `T` and something else remains.
pub fn brute_weak_separator(g: &Graph, terms: &[usize]) -> Result<Option<u64>> {
    let n = g.n();
    if n > SUBSET_LIMIT {
        return Err(Error::SizeGuard { n, limit: SUBSET_LIMIT });
    }
    let mut best = None;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as u64;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let removed: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let comps = crate::graph::components_avoiding(g, &removed);
        if comps.len() < 2 {
            continue;
        }
        if comps.iter().any(|c| c.iter().all(|v| !terms.contains(v))) {
            best = Some(size);
        }
    }
    Ok(best)
}

/// Min `(v, I - v)` separator size for each terminal: the other terminals are
/// contracted into one uncuttable sink.
pub fn brute_isolating(g: &Graph, terms: &[usize]) -> Vec<Option<u64>> {
    let n = g.n();
    terms
        .iter()
        .map(|&v| {
            let mut is_other = vec![false; n];
            for &u in terms {
                is_other[u] = u != v;
            }
            if g.neighbors(v).iter().any(|&u| is_other[u]) {
                return None;
            }
            let sink = n;
            let mut edges = Vec::new();
            for (a, b) in g.edges() {
                let a2 = if is_other[a] { sink } else { a };
                let b2 = if is_other[b] { sink } else { b };
                if a2 != b2 {
                    edges.push((a2.min(b2), a2.max(b2)));
                }
            }
            edges.sort_unstable();
            edges.dedup();
            let h = Graph::from_edges(n + 1, &edges).unwrap();
            pair_separator(&h, v, sink, u64::MAX).map(|(value, _)| value)
        })
        .collect()
}
