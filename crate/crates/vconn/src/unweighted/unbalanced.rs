use crate::cut::{better, validate_cut, VertexCut};
use crate::error::{Error, Result};
use crate::graph::{ceil_log2, log2_at_least_one, Graph};
use crate::isocut::subgraph_balanced_terminal_vc;
use crate::kernel::{build_kernel_index, query_kappa_upper};
use crate::maxflow::{min_degree_cut, st_cut};
use crate::par;
use crate::pseudorandom::symmetric_crossing_family;
use crate::stats::Ctx;

/// A vertex cut of a connected, non-complete `G`; minimum whenever some
/// minimum cut has a side `L` with `|L| <= lambda·δ` and `|L| <= |R|`.
///
/// Each scale `ell = 2, 4, …` clusters the low-degree vertices, runs the
/// subgraph terminal search inside every small cluster, ranks crossing pairs
/// by their kernel upper bounds and confirms the best pair with one flow on `G`.
pub fn unbalanced_vc(ctx: &Ctx, g: &Graph) -> Result<Option<VertexCut>> {
    let n = g.n();
    if n < 3 || g.is_complete() || !g.is_connected() {
        return Ok(None);
    }
    let delta = g.min_degree();
    let logn = log2_at_least_one(n);
    let top = ceil_log2(delta * logn).max(ceil_log2(ctx.cfg.lambda as usize * delta)).max(1);
    let mut best = min_degree_cut(g);
    for i in 1..=top {
        let ell = 1usize << i;
        let family = symmetric_crossing_family(&ctx.cfg, n, (2 * delta) as f64 / ell as f64)?;
        let idx = build_kernel_index(ctx, g, ell);

        let small: Vec<&Vec<usize>> = idx.clusters.iter().filter(|c| c.len() >= 2 && c.len() <= idx.gate).collect();
        for c in par::map(&small, |c| subgraph_balanced_terminal_vc(ctx, g, c, delta * logn)) {
            best = better(best, c?);
        }

        let uppers = par::map(family.pairs(), |&(s, t)| -> Result<u64> {
            if g.has_edge(s, t) {
                return Ok(u64::MAX);
            }
            query_kappa_upper(ctx, g, &idx, s, t)
        });
        let mut winner: Option<(u64, (usize, usize))> = None;
        for (&pair, up) in family.pairs().iter().zip(uppers) {
            let up = up?;
            if up < n as u64 && winner.map_or(true, |(w, _)| up < w) {
                winner = Some((up, pair));
            }
        }
        if let Some((_, (s, t))) = winner {
            best = better(best, st_cut(ctx, g, s, t, None)?);
        }
    }
    match best {
        Some(c) if !validate_cut(g, &c) => Err(Error::Invariant(format!("unbalanced search produced an invalid cut {c:?}"))),
        c => Ok(c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute::brute_kappa;
    use crate::oracle::planted::{generate_planted, PlantedGraph, PlantedKind, PlantedParams};

    #[test]
    fn cycle() {
        let e: Vec<_> = (0..9).map(|i| (i, (i + 1) % 9)).collect();
        let c = unbalanced_vc(&Ctx::default(), &Graph::from_edges(9, &e).unwrap()).unwrap().unwrap();
        assert_eq!(c.value, 2);
    }

    #[test]
    fn star() {
        let e: Vec<_> = (1..7).map(|i| (0, i)).collect();
        let c = unbalanced_vc(&Ctx::default(), &Graph::from_edges(7, &e).unwrap()).unwrap().unwrap();
        assert_eq!(c.sep, vec![0]);
    }

    #[test]
    fn planted_unbalanced() {
        let ctx = Ctx::default();
        let p = PlantedParams { left: 2, sep: 3, right: 16, density: 0.7, max_weight: 1 };
        for seed in 0..4 {
            let inst = generate_planted(PlantedKind::Unbalanced, p, seed).unwrap();
            let PlantedGraph::Undirected(g) = &inst.graph else { unreachable!() };
            let c = unbalanced_vc(&ctx, g).unwrap().unwrap();
            assert_eq!(c.value, brute_kappa(g).unwrap().unwrap().value);
        }
    }
}
