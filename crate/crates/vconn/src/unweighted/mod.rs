//! Exact vertex connectivity of undirected graphs: the unbalanced search
//! followed by rounds of balanced terminal search and terminal reduction.

mod expander;
mod reduction;
mod shaving;
mod unbalanced;

pub use expander::{decompose, expander_decomposition, terminal_expansion, BudgetExceeded, ExpanderDecomposition, PieceCheck, Ratio};
pub use reduction::{terminal_reduction, Reduction};
pub use shaving::shaving;
pub use unbalanced::unbalanced_vc;

use crate::cut::{better, validate_cut, Connectivity, VertexCut};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::isocut::balanced_terminal_vc;
use crate::maxflow::{min_degree_cut, st_cut};
use crate::sparsify::ni_sparsify;
use crate::stats::Ctx;

/// Moves a cut of a spanning subgraph `h` onto `g`: the minimum separator in
/// `g` between the first non-adjacent pair across the cut.
pub fn lift_cut(ctx: &Ctx, g: &Graph, cut: &VertexCut) -> Result<Option<VertexCut>> {
    if validate_cut(g, cut) {
        return Ok(Some(cut.clone()));
    }
    for &l in &cut.left {
        if let Some(&r) = cut.right.iter().find(|&&r| !g.has_edge(l, r)) {
            return st_cut(ctx, g, l, r, None);
        }
    }
    Ok(None)
}

/// Global vertex connectivity of `G`.
///
/// Disconnected graphs give a value-0 cut and complete graphs report
/// `Complete` with value `n - 1`. Otherwise the graph is sparsified to a
/// `δ`-certificate, and the minimum of the unbalanced search and every
/// balanced-terminal and reduction round (starting from `T = V`) is returned.
pub fn vertex_connectivity_unweighted(ctx: &Ctx, g: &Graph) -> Result<Connectivity> {
    let n = g.n();
    if g.is_complete() {
        return Ok(Connectivity::Complete { value: Some(n.saturating_sub(1) as u64) });
    }
    let comps = g.components();
    if comps.len() > 1 {
        let left = comps[0].clone();
        let mut right: Vec<usize> = comps[1..].concat();
        right.sort_unstable();
        return Ok(Connectivity::Cut(VertexCut { left, sep: Vec::new(), right, value: 0 }));
    }
    let k = g.min_degree();
    let h = ni_sparsify(g, k);
    let mut best = min_degree_cut(g);
    let offer = |c: Option<VertexCut>, best: &mut Option<VertexCut>| -> Result<()> {
        if let Some(c) = c {
            *best = better(best.take(), lift_cut(ctx, g, &c)?);
        }
        Ok(())
    };
    offer(unbalanced_vc(ctx, &h)?, &mut best)?;
    let mut terms: Vec<usize> = (0..n).collect();
    while !terms.is_empty() {
        offer(balanced_terminal_vc(ctx, &h, &terms, k)?, &mut best)?;
        let round = terminal_reduction(ctx, &h, &terms, k)?;
        offer(round.cut, &mut best)?;
        terms = round.terminals;
    }
    match best {
        Some(c) if validate_cut(g, &c) => Ok(Connectivity::Cut(c)),
        Some(c) => Err(Error::Invariant(format!("driver produced an invalid cut {c:?}"))),
        None => Err(Error::Invariant("connected non-complete graph without a cut".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute::brute_kappa;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn complete(n: usize) -> Graph {
        let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn petersen() {
        let mut e: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        e.extend((0..5).map(|i| (i, i + 5)));
        let g = Graph::from_edges(10, &e).unwrap();
        assert_eq!(vertex_connectivity_unweighted(&Ctx::default(), &g).unwrap().value(), Some(3));
    }

    #[test]
    fn two_cliques_sharing_a_pair() {
        let mut e = Vec::new();
        for block in [[0, 1, 2, 3, 4, 5], [4, 5, 6, 7, 8, 9]] {
            for (i, &u) in block.iter().enumerate() {
                for &v in &block[i + 1..] {
                    if (u, v) != (4, 5) || block[0] == 0 {
                        e.push((u, v));
                    }
                }
            }
        }
        let g = Graph::from_edges(10, &e).unwrap();
        let c = vertex_connectivity_unweighted(&Ctx::default(), &g).unwrap();
        assert_eq!(c.cut().unwrap().sep, vec![4, 5]);
    }

    #[test]
    fn complete_and_disconnected() {
        assert_eq!(vertex_connectivity_unweighted(&Ctx::default(), &complete(7)).unwrap(), Connectivity::Complete { value: Some(6) });
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(vertex_connectivity_unweighted(&Ctx::default(), &g).unwrap().value(), Some(0));
    }

    #[test]
    fn matches_oracle_on_random_graphs() {
        let ctx = Ctx::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 12 {
            let n = rng.gen_range(6..20);
            let p = rng.gen_range(0.2..0.7);
            let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
            let g = Graph::from_edges(n, &e).unwrap();
            if !g.is_connected() {
                continue;
            }
            let want = brute_kappa(&g).unwrap().map_or(n as u64 - 1, |c| c.value);
            assert_eq!(vertex_connectivity_unweighted(&ctx, &g).unwrap().value(), Some(want));
            checked += 1;
        }
    }
}
