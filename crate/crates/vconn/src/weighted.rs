//! Exact vertex connectivity of vertex-weighted digraphs.
//!
//! Two searches run on `D` and on its reverse. The lopsided search (`w(R)`
//! much larger than `w(L)`) clusters vertices by weighted out-neighborhood,
//! splits off the vertices almost every cluster member points to, and runs
//! flows on graphs that keep only arcs touching the cluster. The symmetric
//! search pairs vertices by weight bucket and runs flows on graphs without the
//! arcs inside `N^out(s)` and inside `N^in(t)`.

use crate::cnc::weighted_cnc;
use crate::cut::{better, cut_from_separator, validate_cut, Connectivity, VertexCut};
use crate::error::{Error, Result};
use crate::graph::{ceil_log2, log2_at_least_one, set_neighborhood, Digraph, Direction, WeightedDigraph};
use crate::maxflow::{min_st_separator_bounded, Separation};
use crate::par;
use crate::pseudorandom::{crossing_family_or_complete, symmetric_crossing_family, PairFamily};
use crate::stats::Ctx;
use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering::Relaxed};

/// Vertices not pointed to by more than 0.9 of the cluster's weight.
pub fn identify_vlow(d: &WeightedDigraph, cluster: &[usize]) -> Result<Vec<usize>> {
    let wc = d.weight_of(cluster);
    if wc == 0 {
        return Err(Error::Invariant("cluster has zero weight".into()));
    }
    let mut into = vec![0u64; d.n()];
    for &u in cluster {
        for &v in d.out_neighbors(u) {
            into[v] += d.weight(u);
        }
    }
    Ok((0..d.n()).filter(|&v| 10 * into[v] <= 9 * wc).collect())
}

/// Weight bucket: `0` for weight 1, otherwise `i` with `2^(i-1) < w <= 2^i`.
fn bucket(w: u64) -> usize {
    if w <= 1 {
        0
    } else {
        (64 - (w - 1).leading_zeros()) as usize
    }
}

fn log_w(d: &WeightedDigraph) -> usize {
    ceil_log2(d.max_weight() as usize).max(1)
}

/// Pairs in `C × V_low` crossing `L × R` whenever `L ⊆ C`, `w(L) ≈ ell`
/// and `w(R) ≈ r`, built per weight-bucket pair.
pub fn lopsided_pairs(ctx: &Ctx, d: &WeightedDigraph, cluster: &[usize], vlow: &[usize], ell: u64, r: u64) -> Result<PairFamily> {
    let n = d.n();
    let logw = log_w(d) as u64;
    let logn = log2_at_least_one(n) as u64;
    let top = bucket(d.max_weight());
    let split = |set: &[usize]| -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); top + 1];
        for &v in set {
            out[bucket(d.weight(v))].push(v);
        }
        out
    };
    let (cs, ds) = (split(cluster), split(vlow));
    let mut pairs = Vec::new();
    let mut bound = 0;
    for (i, ci) in cs.iter().enumerate() {
        if ci.is_empty() {
            continue;
        }
        let l = (ell.div_ceil((1u64 << i) * logw) as usize).clamp(1, ci.len());
        let mut widest = 0;
        for dj in ds.iter().filter(|dj| !dj.is_empty()) {
            let slack = (n as u64 * ell * logw * logn * logn).div_ceil(r.max(1));
            let rr = (dj.len() as u64).saturating_sub(slack).clamp(1, dj.len() as u64) as usize;
            let fam = crossing_family_or_complete(&ctx.cfg, ci, dj, l, rr)?;
            widest += fam.declared_bound;
            pairs.extend(fam.pairs().iter().copied().filter(|&(u, v)| u != v));
        }
        bound = bound.max(widest);
    }
    let fam = PairFamily::new(pairs, bound, crate::pseudorandom::Backend::Complete);
    Ok(fam)
}

/// `G_{s,t,C}`: arcs with an endpoint in `C`, minus arcs inside `N^out(s)`,
/// plus `u -> t` for every `u ∈ N^out(C)`. Vertex ids are kept.
pub fn sparsify_lopsided(d: &WeightedDigraph, s: usize, t: usize, cluster: &[usize]) -> Result<WeightedDigraph> {
    let n = d.n();
    let mut in_c = vec![false; n];
    for &v in cluster {
        in_c[v] = true;
    }
    if !in_c[s] {
        return Err(Error::Invariant(format!("source {s} is outside the cluster")));
    }
    let mut near_s = vec![false; n];
    for &v in d.out_neighbors(s) {
        near_s[v] = true;
    }
    let mut arcs: Vec<(usize, usize)> = d
        .arcs()
        .filter(|&(u, v)| (in_c[u] || in_c[v]) && !(near_s[u] && near_s[v]))
        .collect();
    arcs.extend(set_neighborhood(d, cluster, Direction::Out).into_iter().filter(|&u| u != t).map(|u| (u, t)));
    Ok(d.with_arcs(&arcs))
}

/// `G_{s,t}`: `D` without arcs inside `N^out(s)` and inside `N^in(t)`.
pub fn sparsify_symmetric(d: &WeightedDigraph, s: usize, t: usize) -> Result<WeightedDigraph> {
    if s == t {
        return Err(Error::Invariant("sparsify_symmetric needs s != t".into()));
    }
    let n = d.n();
    let (mut near_s, mut near_t) = (vec![false; n], vec![false; n]);
    for &v in d.out_neighbors(s) {
        near_s[v] = true;
    }
    for &v in d.in_neighbors(t) {
        near_t[v] = true;
    }
    let arcs: Vec<(usize, usize)> = d
        .arcs()
        .filter(|&(u, v)| !(near_s[u] && near_s[v]) && !(near_t[u] && near_t[v]))
        .collect();
    Ok(d.with_arcs(&arcs))
}

/// Pairs crossing `(L, R)` in one direction or the other whenever
/// `w(L) <= w(R) <= lambda·w(L)·log n` and `ell` is within a factor 2 of `w(L)`.
pub fn symmetric_pairs(ctx: &Ctx, d: &WeightedDigraph, ell: u64) -> Result<PairFamily> {
    let n = d.n();
    let logw = log_w(d) as f64;
    let logn = log2_at_least_one(n) as f64;
    let lambda = ctx.cfg.lambda as f64;
    let top = bucket(d.max_weight());
    let mut buckets = vec![Vec::new(); top + 1];
    for v in 0..n {
        buckets[bucket(d.weight(v))].push(v);
    }
    let mut pairs = Vec::new();
    let mut bound = 0;
    for i in 0..=top {
        for j in 0..=top {
            if buckets[i].is_empty() || buckets[j].is_empty() {
                continue;
            }
            let mut ground: Vec<usize> = buckets[i].iter().chain(&buckets[j]).copied().collect();
            ground.sort_unstable();
            ground.dedup();
            let scale = (1u64 << i.max(j)) as f64 / ell as f64;
            let alpha = (n as f64).min(n as f64 * scale * logw * lambda * lambda * logn);
            let fam = symmetric_crossing_family(&ctx.cfg, ground.len(), alpha)?.mapped(&ground);
            bound += fam.declared_bound;
            let heavy = if i >= j { i } else { j };
            pairs.extend(fam.pairs().iter().copied().filter(|&(u, _)| bucket(d.weight(u)) == heavy));
        }
    }
    Ok(PairFamily::new(pairs, bound, crate::pseudorandom::Backend::Complete))
}

/// Powers of two `1, 2, 4, …` up to the first one reaching `w(V)`.
fn weight_guesses(d: &WeightedDigraph) -> Vec<u64> {
    let total = d.total_weight();
    let mut out = vec![1u64];
    while *out.last().unwrap() < total {
        out.push(out.last().unwrap() * 2);
    }
    out
}

/// One flow on a sparsified instance, mapped back to a cut of `D` and checked there.
fn sparsified_flow(ctx: &Ctx, d: &WeightedDigraph, inst: &WeightedDigraph, s: usize, t: usize, bound: &AtomicU64) -> Result<Option<VertexCut>> {
    ctx.stats.add(&ctx.stats.sparsified_edges, inst.arc_count() as u64);
    ctx.stats.add(&ctx.stats.naive_edges, d.arc_count() as u64);
    let limit = Some(bound.load(Relaxed));
    let Some(Separation::Separator { sep, .. }) = min_st_separator_bounded(ctx, inst, s, t, limit)? else {
        return Ok(None);
    };
    ctx.stats.add(&ctx.stats.sparsified_checked, 1);
    match cut_from_separator(d, &sep, s) {
        Some(c) if validate_cut(d, &c) && c.right.contains(&t) => {
            bound.fetch_min(c.value, Relaxed);
            Ok(Some(c))
        }
        _ => {
            ctx.stats.add(&ctx.stats.sparsified_invalid, 1);
            ctx.stats.event(format!("sparsified separator {sep:?} for ({s}, {t}) does not separate in the input"));
            Ok(None)
        }
    }
}

/// The cut `(v, N^out(v), rest)` of least separator weight, when one exists.
pub fn out_neighborhood_cut(d: &WeightedDigraph) -> Option<VertexCut> {
    let mut best = None;
    for v in 0..d.n() {
        best = better(best, cut_from_separator(d, d.out_neighbors(v), v));
    }
    best
}

/// A valid cut of `D`; minimum whenever some minimum cut has
/// `w(R) > lambda·w(L)·log n`.
pub fn lopsided_vc(ctx: &Ctx, d: &WeightedDigraph) -> Result<Option<VertexCut>> {
    let n = d.n();
    if n < 3 || d.is_complete() {
        return Ok(None);
    }
    let logn = log2_at_least_one(n) as u64;
    let guesses = weight_guesses(d);
    let bound = AtomicU64::new(u64::MAX);
    let mut best = None;
    for &ell in &guesses {
        let lopsided_r: Vec<u64> = guesses.iter().copied().filter(|&r| 2 * r > ctx.cfg.lambda * ell * logn).collect();
        if lopsided_r.is_empty() {
            continue;
        }
        for cluster in weighted_cnc(d, ell) {
            let vlow = identify_vlow(d, &cluster)?;
            if vlow.is_empty() {
                continue;
            }
            let mut pairs = BTreeSet::new();
            for &r in &lopsided_r {
                pairs.extend(lopsided_pairs(ctx, d, &cluster, &vlow, ell, r)?.pairs().iter().copied());
            }
            let pairs: Vec<(usize, usize)> = pairs.into_iter().filter(|&(s, t)| !d.has_arc(s, t)).collect();
            let found = par::map(&pairs, |&(s, t)| -> Result<Option<VertexCut>> {
                let inst = sparsify_lopsided(d, s, t, &cluster)?;
                sparsified_flow(ctx, d, &inst, s, t, &bound)
            });
            for c in found {
                best = better(best, c?);
            }
        }
    }
    Ok(best)
}

/// A valid cut of `D`; minimum whenever some minimum cut has
/// `w(L) <= w(R) <= lambda·w(L)·log n`.
pub fn symmetric_vc(ctx: &Ctx, d: &WeightedDigraph) -> Result<Option<VertexCut>> {
    let n = d.n();
    if n < 3 || d.is_complete() {
        return Ok(None);
    }
    let mut pairs = BTreeSet::new();
    for ell in weight_guesses(d) {
        for (u, v) in symmetric_pairs(ctx, d, ell)?.pairs().iter().copied() {
            pairs.insert((u, v));
            pairs.insert((v, u));
        }
    }
    let pairs: Vec<(usize, usize)> = pairs.into_iter().filter(|&(s, t)| s != t && !d.has_arc(s, t)).collect();
    let bound = AtomicU64::new(u64::MAX);
    let found = par::map(&pairs, |&(s, t)| -> Result<Option<VertexCut>> {
        let inst = sparsify_symmetric(d, s, t)?;
        sparsified_flow(ctx, d, &inst, s, t, &bound)
    });
    let mut best = None;
    for c in found {
        best = better(best, c?);
    }
    Ok(best)
}

/// A value-0 cut when `D` is not strongly connected.
fn zero_cut(d: &WeightedDigraph) -> Option<VertexCut> {
    let n = d.n();
    let reach = |dir: Direction| -> Vec<bool> {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            let next = if dir == Direction::Out { d.out_neighbors(u) } else { d.in_neighbors(u) };
            for &v in next {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    };
    let fwd = reach(Direction::Out);
    if fwd.iter().any(|&x| !x) {
        let left = (0..n).filter(|&v| fwd[v]).collect();
        let right = (0..n).filter(|&v| !fwd[v]).collect();
        return Some(VertexCut { left, sep: Vec::new(), right, value: 0 });
    }
    let back = reach(Direction::In);
    if back.iter().any(|&x| !x) {
        let left = (0..n).filter(|&v| !back[v]).collect();
        let right = (0..n).filter(|&v| back[v]).collect();
        return Some(VertexCut { left, sep: Vec::new(), right, value: 0 });
    }
    None
}

/// Minimum-weight vertex cut of `D`. Complete digraphs report `Complete`
/// without a value.
pub fn vertex_connectivity_weighted(ctx: &Ctx, d: &WeightedDigraph) -> Result<Connectivity> {
    if d.n() < 2 || d.is_complete() {
        return Ok(Connectivity::Complete { value: None });
    }
    if let Some(c) = zero_cut(d) {
        return Ok(Connectivity::Cut(c));
    }
    let rev = d.reverse();
    let mut best = out_neighborhood_cut(d);
    best = better(best, lopsided_vc(ctx, d)?);
    best = better(best, symmetric_vc(ctx, d)?);
    best = better(best, lopsided_vc(ctx, &rev)?.map(|c| c.sides_swapped()));
    best = better(best, symmetric_vc(ctx, &rev)?.map(|c| c.sides_swapped()));
    match best {
        Some(c) if validate_cut(d, &c) => Ok(Connectivity::Cut(c)),
        Some(c) => Err(Error::Invariant(format!("weighted search produced an invalid cut {c:?}"))),
        None => Err(Error::Invariant("strongly connected non-complete digraph without a cut".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute::{brute_kappa_weighted, brute_pair_kappa, PairKappa};
    use crate::oracle::planted::{generate_planted, PlantedGraph, PlantedKind, PlantedParams};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_digraph(n: usize, p: f64, max_w: u64, seed: u64) -> WeightedDigraph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let arcs: Vec<_> = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| u != v).filter(|_| rng.gen_bool(p)).collect();
        let w = (0..n).map(|_| rng.gen_range(1..=max_w)).collect();
        WeightedDigraph::from_arcs(n, &arcs, w).unwrap()
    }

    #[test]
    fn weighted_cycle() {
        let d = WeightedDigraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)], vec![3, 1, 4]).unwrap();
        assert_eq!(vertex_connectivity_weighted(&Ctx::default(), &d).unwrap().value(), Some(1));
    }

    #[test]
    fn not_strongly_connected() {
        let d = WeightedDigraph::from_arcs(3, &[(0, 1), (1, 2)], vec![1, 1, 1]).unwrap();
        let c = vertex_connectivity_weighted(&Ctx::default(), &d).unwrap();
        assert_eq!(c.value(), Some(0));
        assert!(validate_cut(&d, c.cut().unwrap()));
    }

    #[test]
    fn complete_has_no_value() {
        let arcs: Vec<_> = (0..4).flat_map(|u| (0..4).map(move |v| (u, v))).filter(|&(u, v)| u != v).collect();
        let d = WeightedDigraph::from_arcs(4, &arcs, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(vertex_connectivity_weighted(&Ctx::default(), &d).unwrap(), Connectivity::Complete { value: None });
    }

    #[test]
    fn single_source_cluster() {
        let d = WeightedDigraph::from_arcs(4, &[(0, 1), (0, 2), (3, 0)], vec![1, 1, 1, 1]).unwrap();
        assert_eq!(identify_vlow(&d, &[0]).unwrap(), vec![0, 3]);
    }

    #[test]
    fn symmetric_sparsification_keeps_pair_connectivity() {
        for seed in 0..20 {
            let d = random_digraph(9, 0.4, 5, seed);
            for s in 0..9 {
                for t in 0..9 {
                    if s == t || d.has_arc(s, t) {
                        continue;
                    }
                    let inst = sparsify_symmetric(&d, s, t).unwrap();
                    assert_eq!(brute_pair_kappa(&inst, s, t), brute_pair_kappa(&d, s, t));
                }
            }
        }
    }

    #[test]
    fn lopsided_separators_are_sound() {
        let ctx = Ctx::default();
        for seed in 0..10 {
            let d = random_digraph(10, 0.35, 4, 100 + seed);
            for cluster in weighted_cnc(&d, 2) {
                for &s in &cluster {
                    for t in 0..10 {
                        if s == t || d.has_arc(s, t) {
                            continue;
                        }
                        let inst = sparsify_lopsided(&d, s, t, &cluster).unwrap();
                        let bound = AtomicU64::new(u64::MAX);
                        if let PairKappa::Value(v) = brute_pair_kappa(&inst, s, t) {
                            let c = sparsified_flow(&ctx, &d, &inst, s, t, &bound).unwrap().unwrap();
                            assert_eq!(c.value, v);
                        }
                    }
                }
            }
        }
        assert_eq!(ctx.stats.snapshot().sparsified_invalid, 0);
    }

    #[test]
    fn matches_oracle() {
        let ctx = Ctx::default();
        let mut done = 0;
        let mut seed = 0;
        while done < 15 {
            seed += 1;
            let d = random_digraph(8 + (seed as usize % 6), 0.4, 8, seed);
            if !d.is_strongly_connected() || d.is_complete() {
                continue;
            }
            let want = brute_kappa_weighted(&d).unwrap().unwrap().value;
            assert_eq!(vertex_connectivity_weighted(&ctx, &d).unwrap().value(), Some(want), "seed {seed}");
            done += 1;
        }
    }

    #[test]
    fn planted_lopsided() {
        let ctx = Ctx::default();
        let p = PlantedParams { left: 2, sep: 3, right: 12, density: 0.6, max_weight: 4 };
        for seed in 0..3 {
            let inst = generate_planted(PlantedKind::Lopsided, p, seed).unwrap();
            let PlantedGraph::Weighted(d) = &inst.graph else { unreachable!() };
            let c = vertex_connectivity_weighted(&ctx, d).unwrap();
            assert_eq!(c.value(), Some(inst.cut.value));
        }
    }
}
