//! Cluster index over low-degree vertices and small per-query flow kernels.

use crate::cnc::{cnc, sketch_construct, sketch_difference, Candidates, Clustering, Recovery, RecoverySketch};
use crate::error::{Error, Result};
use crate::graph::{ceil_log2, log2_at_least_one, symdiff_size, Graph};
use crate::maxflow::{min_st_separator, Separation};
use crate::stats::Ctx;
use std::sync::atomic::Ordering::Relaxed;

#[derive(Clone, Debug)]
pub struct KernelIndex {
    pub ell: usize,
    pub delta: usize,
    /// Vertices of degree at most `c_low·δ`, sorted.
    pub low: Vec<usize>,
    /// Clusters in global ids.
    pub clusters: Vec<Vec<usize>>,
    /// Clusters containing each vertex.
    pub member_of: Vec<Vec<usize>>,
    /// Clusters small enough to be queried.
    pub gate: usize,
    sketches: Vec<RecoverySketch>,
}

/// The query kernel's vertex set is empty apart from `s` and `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmptyKernel;

/// Kernel graph with the map back to `G`.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub graph: Graph,
    pub ids: Vec<usize>,
    pub s: usize,
    pub t: usize,
}

/// Clusters `G[V_low]` under `|N(u) △ N(v)|` with threshold `4·ell`.
pub fn build_kernel_index(ctx: &Ctx, g: &Graph, ell: usize) -> KernelIndex {
    let n = g.n();
    let delta = g.min_degree();
    let low: Vec<usize> = (0..n).filter(|&v| g.degree(v) <= ctx.cfg.c_low * delta).collect();
    let h = g.induced(&low);
    let part: Clustering = cnc(low.len(), Candidates::Edges(&h), |u, v| symdiff_size(g, low[u], low[v]) as u64, 4 * ell as u64);
    let clusters: Vec<Vec<usize>> = part.clusters().map(|c| c.iter().map(|&x| low[x]).collect()).collect();
    let mut member_of = vec![Vec::new(); n];
    for (i, c) in clusters.iter().enumerate() {
        for &v in c {
            member_of[v].push(i);
        }
    }
    ctx.stats.add(&ctx.stats.cluster_memberships, clusters.iter().map(|c| c.len() as u64).sum());
    let log = log2_at_least_one(n);
    let sketches = sketch_construct(g, ell * ceil_log2(n).pow(2).max(1));
    KernelIndex { ell, delta, low, clusters, member_of, gate: ctx.cfg.cluster_gate * delta * log, sketches }
}

/// Flow kernel for cluster `i`, source `s ∈ V_i` and sink `t`.
pub fn kernel_graph(g: &Graph, idx: &KernelIndex, i: usize, s: usize, t: usize) -> Result<std::result::Result<Kernel, EmptyKernel>> {
    let cluster = &idx.clusters[i];
    if cluster.binary_search(&s).is_err() {
        return Err(Error::Invariant(format!("source {s} is not in cluster {i}")));
    }
    let core: Vec<usize> = cluster.iter().copied().filter(|&u| u != t && !g.has_edge(u, t)).collect();
    if core.is_empty() {
        return Ok(Err(EmptyKernel));
    }
    let outer = g.set_neighborhood(&core);
    let mut ids: Vec<usize> = core.iter().chain(&outer).copied().chain([s, t]).chain(g.neighbors(s).iter().copied()).collect();
    ids.sort_unstable();
    ids.dedup();
    let local = |v: usize| ids.binary_search(&v).unwrap();
    let mut edges = Vec::new();
    for &v in g.neighbors(s) {
        edges.push((local(s), local(v)));
    }
    for &u in &core {
        let fresh = match sketch_difference(&idx.sketches[u], &idx.sketches[s])? {
            Recovery::Set(x) => x,
            Recovery::TooLarge => return Err(Error::Invariant("sketch threshold exceeded inside a cluster".into())),
        };
        for v in fresh {
            if v != u {
                edges.push((local(u), local(v)));
            }
        }
    }
    for &u in &outer {
        if u != t {
            edges.push((local(u), local(t)));
        }
    }
    for e in edges.iter_mut() {
        *e = (e.0.min(e.1), e.0.max(e.1));
    }
    edges.retain(|e| e.0 != e.1);
    edges.sort_unstable();
    edges.dedup();
    let graph = Graph::from_edges(ids.len(), &edges)?;
    Ok(Ok(Kernel { s: local(s), t: local(t), graph, ids }))
}

/// Upper bound on `κ(s, t)` from the kernels of small clusters containing `s`;
/// `n` when no kernel separates them.
pub fn query_kappa_upper(ctx: &Ctx, g: &Graph, idx: &KernelIndex, s: usize, t: usize) -> Result<u64> {
    if s == t {
        return Err(Error::Invariant("query needs s != t".into()));
    }
    let n = g.n() as u64;
    let mut best = n;
    for &i in &idx.member_of[s] {
        if idx.clusters[i].len() > idx.gate {
            continue;
        }
        let Ok(k) = kernel_graph(g, idx, i, s, t)? else { continue };
        ctx.stats.kernel_edges.fetch_add(k.graph.m() as u64, Relaxed);
        if let Separation::Separator { value, .. } = min_st_separator(ctx, &k.graph, k.s, k.t)? {
            best = best.min(value);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute::{brute_pair_kappa, PairKappa};
    use crate::oracle::planted::{generate_planted, PlantedGraph, PlantedKind, PlantedParams};

    fn complete(n: usize) -> Graph {
        let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn clique_is_one_cluster() {
        let ctx = Ctx::default();
        let idx = build_kernel_index(&ctx, &complete(6), 1);
        assert_eq!(idx.clusters, vec![(0..6).collect::<Vec<_>>()]);
        assert!(matches!(kernel_graph(&complete(6), &idx, 0, 0, 1).unwrap(), Err(EmptyKernel)));
        assert_eq!(query_kappa_upper(&ctx, &complete(6), &idx, 0, 1).unwrap(), 6);
    }

    #[test]
    fn planted_unbalanced_exact() {
        let ctx = Ctx::default();
        let p = PlantedParams { left: 2, sep: 3, right: 14, density: 0.7, max_weight: 1 };
        for seed in 0..5 {
            let inst = generate_planted(PlantedKind::Unbalanced, p, seed).unwrap();
            let PlantedGraph::Undirected(g) = &inst.graph else { unreachable!() };
            let idx = build_kernel_index(&ctx, g, 2);
            let (s, t) = (inst.cut.left[0], inst.cut.right[0]);
            assert!(idx.member_of[s].iter().any(|&i| inst.cut.left.iter().all(|v| idx.clusters[i].contains(v))));
            assert_eq!(query_kappa_upper(&ctx, g, &idx, s, t).unwrap(), inst.cut.value);
        }
    }

    #[test]
    fn kernel_never_below_pair_connectivity() {
        let ctx = Ctx::default();
        let g = Graph::from_edges(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 0), (0, 4), (2, 6)]).unwrap();
        let idx = build_kernel_index(&ctx, &g, 2);
        for s in 0..8 {
            for t in 0..8 {
                if s == t {
                    continue;
                }
                let upper = query_kappa_upper(&ctx, &g, &idx, s, t).unwrap();
                if let PairKappa::Value(k) = brute_pair_kappa(&g, s, t) {
                    assert!(upper >= k, "s={s} t={t}");
                }
            }
        }
    }
}
