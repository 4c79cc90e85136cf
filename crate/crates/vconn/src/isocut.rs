//! Isolating vertex cuts and the balanced-terminal cut algorithms.

use crate::cut::{better, cut_from_separator, validate_cut, VertexCut};
use crate::error::{Error, Result};
use crate::graph::{ceil_log2, components_avoiding, Graph};
use crate::maxflow::{min_s_to_set_separator, min_s_to_set_separator_bounded, min_st_separator, Separation};
use crate::par;
use crate::pseudorandom::{build_selector, symmetric_crossing_family};
use crate::stats::Ctx;
use std::sync::atomic::{AtomicU64, Ordering};

/// Minimum separator between one terminal and all the others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isolation {
    pub terminal: usize,
    pub sep: Vec<usize>,
    pub value: u64,
}

/// Minimum `(v, I - v)` separators for every `v` of an independent set `I`.
///
/// One flow per bit of the terminal index splits the terminals into regions;
/// each terminal then gets one flow inside its own region.
pub fn isolating_vertex_cuts(ctx: &Ctx, g: &Graph, terms: &[usize]) -> Result<Vec<Isolation>> {
    let n = g.n();
    if terms.len() < 2 {
        return Err(Error::Invariant("isolating cuts need at least two terminals".into()));
    }
    let mut is_term = vec![false; n];
    for &v in terms {
        if v >= n || is_term[v] {
            return Err(Error::Invariant(format!("terminal {v} repeated or out of range")));
        }
        is_term[v] = true;
    }
    if terms.iter().any(|&v| g.neighbors(v).iter().any(|&u| is_term[u])) {
        return Err(Error::Invariant("terminal set is not independent".into()));
    }

    let rounds: Vec<usize> = (0..ceil_log2(terms.len())).collect();
    let seps = par::map(&rounds, |&bit| -> Result<Vec<usize>> {
        let (a, b): (Vec<usize>, Vec<usize>) = (0..terms.len()).partition(|i| i >> bit & 1 == 1);
        let a: Vec<usize> = a.into_iter().map(|i| terms[i]).collect();
        let b: Vec<usize> = b.into_iter().map(|i| terms[i]).collect();
        let (h, hub) = contract(g, &a);
        match min_s_to_set_separator(ctx, &h, hub, &b)? {
            Separation::Separator { sep, .. } => Ok(sep),
            Separation::NoSeparator => Err(Error::Invariant("terminal classes adjacent".into())),
        }
    });
    let mut removed = vec![false; n];
    let mut removed_list = Vec::new();
    for sep in seps {
        for v in sep? {
            if !removed[v] {
                removed[v] = true;
                removed_list.push(v);
            }
        }
    }
    let comps = components_avoiding(g, &removed_list);
    let mut region = vec![usize::MAX; n];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            region[v] = i;
        }
    }

    let out = par::map(terms, |&v| -> Result<Isolation> {
        let inner = &comps[region[v]];
        let border = g.set_neighborhood(inner);
        if border.is_empty() {
            return Ok(Isolation { terminal: v, sep: Vec::new(), value: 0 });
        }
        let mut ids: Vec<usize> = inner.iter().chain(&border).copied().collect();
        ids.sort_unstable();
        let sink = ids.len();
        let local = |x: usize| ids.binary_search(&x).unwrap();
        let mut edges = Vec::new();
        for &u in inner {
            for &w in g.neighbors(u) {
                if u < w || region[w] != region[u] {
                    edges.push((local(u), local(w)));
                }
            }
        }
        edges.extend(border.iter().map(|&x| (local(x), sink)));
        let h = Graph::from_edges(sink + 1, &edges)?;
        match min_st_separator(ctx, &h, local(v), sink)? {
            Separation::Separator { sep, value } => {
                Ok(Isolation { terminal: v, sep: sep.into_iter().map(|x| ids[x]).collect(), value })
            }
            Separation::NoSeparator => Err(Error::Invariant("terminal adjacent to its region border sink".into())),
        }
    });
    out.into_iter().collect()
}

/// `G` with the vertices of `set` detached and a new hub `n` joined to `N(set)`.
fn contract(g: &Graph, set: &[usize]) -> (Graph, usize) {
    let n = g.n();
    let mut inside = vec![false; n];
    for &v in set {
        inside[v] = true;
    }
    let mut edges: Vec<(usize, usize)> = g.edges().filter(|&(u, v)| !inside[u] && !inside[v]).collect();
    edges.extend(g.set_neighborhood(set).into_iter().map(|x| (x, n)));
    (Graph::from_edges(n + 1, &edges).expect("contracted graph is simple"), n)
}

/// Greedy maximal independent subset, scanning in ascending id order.
fn independent_subset(g: &Graph, set: &[usize]) -> Vec<usize> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    let mut out: Vec<usize> = Vec::new();
    for v in sorted {
        if out.iter().all(|&u| !g.has_edge(u, v)) {
            out.push(v);
        }
    }
    out
}

/// Selector sets or crossing pairs over the terminals, depending on `k`.
enum Plan {
    Sets(Vec<Vec<usize>>),
    Pairs(Vec<(usize, usize)>),
}

fn plan(ctx: &Ctx, terms: &[usize], k: usize) -> Result<Plan> {
    let eps = ctx.cfg.eps;
    let t = terms.len();
    let span = (k as f64 / eps).ceil() as usize;
    if (span as f64) <= t as f64 / 4.0 {
        match build_selector(&ctx.cfg, t, span, eps) {
            Ok(sel) => {
                let sets = sel.sets.iter().map(|s| s.iter().map(|&i| terms[i]).collect()).collect();
                return Ok(Plan::Sets(sets));
            }
            Err(Error::ConstructionFailed(why)) => ctx.stats.event(format!("selector unavailable, using pairs: {why}")),
            Err(e) => return Err(e),
        }
    }
    let fam = symmetric_crossing_family(&ctx.cfg, t, 1.0 / eps)?;
    Ok(Plan::Pairs(fam.mapped(terms).pairs().to_vec()))
}

fn checked(g: &Graph, cut: Option<VertexCut>) -> Result<Option<VertexCut>> {
    match cut {
        Some(c) if !validate_cut(g, &c) => Err(Error::Invariant(format!("invalid cut {c:?}"))),
        c => Ok(c),
    }
}

/// A vertex cut of `G`, minimum whenever some minimum cut `(L, S, R)` has
/// `|T ∩ L|` and `|T ∩ R|` large compared to `|T ∩ S|` and `|T ∩ L|` around `k`.
pub fn balanced_terminal_vc(ctx: &Ctx, g: &Graph, terms: &[usize], k: usize) -> Result<Option<VertexCut>> {
    if terms.len() < 2 || g.is_complete() {
        return Ok(None);
    }
    let found = match plan(ctx, terms, k)? {
        Plan::Sets(sets) => {
            let per_set = par::map(&sets, |set| -> Result<Option<VertexCut>> {
                let indep = independent_subset(g, set);
                if indep.len() < 2 {
                    return Ok(None);
                }
                let mut best = None;
                for iso in isolating_vertex_cuts(ctx, g, &indep)? {
                    best = better(best, cut_from_separator(g, &iso.sep, iso.terminal));
                }
                Ok(best)
            });
            let mut best = None;
            for c in per_set {
                best = better(best, c?);
            }
            best
        }
        Plan::Pairs(pairs) => crate::maxflow::best_pair_cut(ctx, g, &pairs, None)?,
    };
    checked(g, found)
}

/// Like [`balanced_terminal_vc`] but only touches edges at `T`: flows run on
/// `G[T ∪ N(T)]`-edges incident to `T` plus a hub joined to `N(T)`. Minimum
/// whenever a minimum cut has `L ⊆ T` and is balanced on `T`.
pub fn subgraph_balanced_terminal_vc(ctx: &Ctx, g: &Graph, terms: &[usize], k: usize) -> Result<Option<VertexCut>> {
    if terms.len() < 2 || g.is_complete() {
        return Ok(None);
    }
    let mut terms = terms.to_vec();
    terms.sort_unstable();
    terms.dedup();
    let border = g.set_neighborhood(&terms);
    let mut ids: Vec<usize> = terms.iter().chain(&border).copied().collect();
    ids.sort_unstable();
    let hub = ids.len();
    let local = |x: usize| ids.binary_search(&x).unwrap();
    let mut edges = Vec::new();
    for &u in &terms {
        for &w in g.neighbors(u) {
            edges.push((local(u).min(local(w)), local(u).max(local(w))));
        }
    }
    edges.extend(border.iter().map(|&x| (local(x), hub)));
    edges.sort_unstable();
    edges.dedup();
    let h = Graph::from_edges(hub + 1, &edges)?;
    let lift = |sep: &[usize], v: usize| {
        let sep: Vec<usize> = sep.iter().map(|&x| ids[x]).collect();
        cut_from_separator(g, &sep, v)
    };

    let found = match plan(ctx, &terms, k)? {
        Plan::Sets(sets) => {
            let per_set = par::map(&sets, |set| -> Result<Option<VertexCut>> {
                let indep = independent_subset(g, set);
                if indep.len() < 2 {
                    return Ok(None);
                }
                let mut with_hub: Vec<usize> = indep.iter().map(|&v| local(v)).collect();
                with_hub.push(hub);
                let mut best = None;
                for iso in isolating_vertex_cuts(ctx, &h, &with_hub)? {
                    if iso.terminal != hub {
                        best = better(best, lift(&iso.sep, ids[iso.terminal]));
                    }
                }
                Ok(best)
            });
            let mut best = None;
            for c in per_set {
                best = better(best, c?);
            }
            best
        }
        Plan::Pairs(pairs) => {
            let bound = AtomicU64::new(u64::MAX);
            let per_pair = par::map(&pairs, |&(a, b)| -> Result<Option<VertexCut>> {
                if g.has_edge(a, b) {
                    return Ok(None);
                }
                let limit = Some(bound.load(Ordering::Relaxed));
                match min_s_to_set_separator_bounded(ctx, &h, local(a), &[local(b), hub], limit)? {
                    Some(Separation::Separator { sep, .. }) => {
                        let cut = lift(&sep, a);
                        if let Some(c) = &cut {
                            bound.fetch_min(c.value, Ordering::Relaxed);
                        }
                        Ok(cut)
                    }
                    _ => Ok(None),
                }
            });
            let mut best = None;
            for c in per_pair {
                best = better(best, c?);
            }
            best
        }
    };
    checked(g, found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute::{brute_isolating, brute_kappa};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn cycle_antipodes() {
        let res = isolating_vertex_cuts(&Ctx::default(), &cycle(6), &[0, 3]).unwrap();
        assert!(res.iter().all(|r| r.value == 2));
    }

    #[test]
    fn adjacent_terminals_rejected() {
        assert!(isolating_vertex_cuts(&Ctx::default(), &cycle(6), &[0, 1]).is_err());
    }

    #[test]
    fn matches_brute_force() {
        let ctx = Ctx::default();
        for seed in 0..30 {
            let g = random_graph(14, 0.3, seed);
            let indep = independent_subset(&g, &(0..14).filter(|v| v % 3 != 1).collect::<Vec<_>>());
            if indep.len() < 2 {
                continue;
            }
            let res = isolating_vertex_cuts(&ctx, &g, &indep).unwrap();
            let brute = brute_isolating(&g, &indep);
            for (r, b) in res.iter().zip(&brute) {
                assert_eq!(Some(r.value), *b, "seed {seed} terminal {}", r.terminal);
            }
        }
    }

    #[test]
    fn cycle_eight_all_terminals() {
        let g = cycle(8);
        let all: Vec<usize> = (0..8).collect();
        let c = balanced_terminal_vc(&Ctx::default(), &g, &all, 2).unwrap().unwrap();
        assert_eq!(c.value, 2);
        let c = subgraph_balanced_terminal_vc(&Ctx::default(), &g, &all, 2).unwrap().unwrap();
        assert_eq!(c.value, 2);
    }

    #[test]
    fn selector_branch_is_exact_on_cycles() {
        let g = cycle(24);
        let all: Vec<usize> = (0..24).collect();
        let c = balanced_terminal_vc(&Ctx::default(), &g, &all, 1).unwrap().unwrap();
        assert_eq!(c.value, brute_kappa(&g).unwrap().unwrap().value);
    }

    #[test]
    fn complete_graph_has_no_cut() {
        let e: Vec<_> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        let g = Graph::from_edges(5, &e).unwrap();
        assert_eq!(balanced_terminal_vc(&Ctx::default(), &g, &[0, 1, 2], 1).unwrap(), None);
    }
}
