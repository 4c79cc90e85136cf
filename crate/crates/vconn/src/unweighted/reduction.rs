use super::expander::decompose;
use super::shaving::shaving;
use crate::cnc::{cnc, Candidates};
use crate::cut::{better, validate_cut, VertexCut};
use crate::error::{Error, Result};
use crate::graph::{ceil_log2, log2_at_least_one, sorted_symdiff_len, Graph};
use crate::isocut::balanced_terminal_vc;
use crate::stats::{Ctx, ReductionRecord};

/// Output of one reduction round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// Best cut found while reducing, if any.
    pub cut: Option<VertexCut>,
    /// The next terminal set, sorted.
    pub terminals: Vec<usize>,
    pub record: ReductionRecord,
}

/// Shrinks `T` to at most `0.9|T|` terminals that stay balanced on every
/// minimum cut, unless a minimum cut is found on the way.
pub fn terminal_reduction(ctx: &Ctx, g: &Graph, terms: &[usize], k: usize) -> Result<Reduction> {
    if terms.is_empty() || k == 0 {
        return Err(Error::Invariant("terminal reduction needs terminals and k >= 1".into()));
    }
    let n = g.n();
    let mut terms = terms.to_vec();
    terms.sort_unstable();
    terms.dedup();
    let mut in_t = vec![false; n];
    for &t in &terms {
        in_t[t] = true;
    }
    let dec = decompose(ctx, g, &terms)?;
    let x = &dec.x;
    let mut in_x = vec![false; n];
    for &v in x {
        in_x[v] = true;
    }

    let spread_len = if terms.len() >= 10 { (terms.len() / 100).max(1) } else { 0 };
    let spread: Vec<usize> = terms.iter().copied().filter(|&t| !in_x[t]).take(spread_len).collect();

    let mut big = Vec::new();
    let mut small: Vec<&[usize]> = Vec::new();
    for piece in &dec.pieces {
        let inside: Vec<usize> = piece.iter().copied().filter(|&v| in_t[v]).collect();
        match inside.len() {
            0 => {}
            1..=4 => small.push(piece),
            c => big.extend_from_slice(&inside[..(2 * c).div_ceil(3)]),
        }
    }

    // Bipartite contraction: X on one side, small pieces on the other.
    let mut piece_of = vec![usize::MAX; n];
    for (i, p) in small.iter().enumerate() {
        for &v in p.iter() {
            piece_of[v] = i;
        }
    }
    let mut piece_nbrs: Vec<Vec<usize>> = vec![Vec::new(); small.len()];
    let mut x_nbrs: Vec<Vec<usize>> = vec![Vec::new(); x.len()];
    for (xi, &v) in x.iter().enumerate() {
        for &u in g.neighbors(v) {
            if piece_of[u] != usize::MAX {
                x_nbrs[xi].push(piece_of[u]);
                piece_nbrs[piece_of[u]].push(xi);
            }
        }
    }
    for l in x_nbrs.iter_mut().chain(piece_nbrs.iter_mut()) {
        l.sort_unstable();
        l.dedup();
    }
    let low: Vec<usize> = (0..small.len()).filter(|&i| piece_nbrs[i].len() <= 2 * k).collect();
    let mut low_index = vec![usize::MAX; small.len()];
    for (j, &i) in low.iter().enumerate() {
        low_index[i] = j;
    }
    // G'_low with X at 0..|X| and low pieces after it.
    let nx = x.len();
    let mut low_edges = Vec::new();
    for (xi, l) in x_nbrs.iter().enumerate() {
        for &p in l {
            if low_index[p] != usize::MAX {
                low_edges.push((xi, nx + low_index[p]));
            }
        }
    }
    let contracted = Graph::from_edges(nx + low.len(), &low_edges)?;

    let logn = log2_at_least_one(n);
    let log2 = logn * logn;
    let log3 = log2 * logn;
    let mut best: Option<VertexCut> = None;
    let mut sampled = Vec::new();
    let scales = ceil_log2(k);
    for i in 1..=scales {
        let a = 1usize << i;
        let x_low: Vec<usize> = (0..nx).filter(|&xi| contracted.degree(xi) < 1000 * a).map(|xi| x[xi]).collect();
        let mut path_edges = Vec::new();
        for xi in 0..nx {
            let r = shaving(&contracted, contracted.neighbors(xi), a);
            path_edges.extend(r.windows(2).map(|w| (w[0] - nx, w[1] - nx)));
        }
        path_edges.sort_unstable();
        path_edges.dedup();
        let linked = Graph::from_edges(low.len(), &path_edges)?;
        let dist = |u: usize, v: usize| sorted_symdiff_len(&piece_nbrs[low[u]], &piece_nbrs[low[v]]) as u64;
        let cover = cnc(low.len(), Candidates::Edges(&linked), dist, 15 * a as u64);
        for part in &cover.partitions {
            let mut kept = vec![true; nx];
            for c in part {
                for &j in c.iter().take(c.len() / log2) {
                    sampled.extend(small[low[j]].iter().copied().filter(|&v| in_t[v]));
                }
                if c.len() > 10 * a * log2 {
                    let mut hits = vec![0usize; nx];
                    for &j in c {
                        for &xi in &piece_nbrs[low[j]] {
                            hits[xi] += 1;
                        }
                    }
                    for xi in 0..nx {
                        // |N(x) ∩ C| > (1 - 1/log³n)|C|
                        if hits[xi] > 0 && hits[xi] * log3 > (log3 - 1) * c.len() {
                            kept[xi] = false;
                        }
                    }
                }
            }
            let kept_x: Vec<usize> = (0..nx).filter(|&xi| kept[xi]).map(|xi| x[xi]).collect();
            for group in [kept_x, x_low.clone()] {
                let mut t: Vec<usize> = group.into_iter().chain(spread.iter().copied()).collect();
                t.sort_unstable();
                t.dedup();
                best = better(best, balanced_terminal_vc(ctx, g, &t, k)?);
            }
        }
    }

    let mut next: Vec<usize> = x.iter().chain(&big).chain(&sampled).chain(&spread).copied().collect();
    next.sort_unstable();
    next.dedup();
    let cut_valid = best.as_ref().map_or(true, |c| validate_cut(g, c));
    let record = ReductionRecord {
        terminals_in: terms.len(),
        terminals_out: next.len(),
        cut_valid,
        removed: x.len(),
        big: big.len(),
        sampled: sampled.len(),
        spread: spread.len(),
    };
    ctx.stats.record_reduction(record.clone());
    if 10 * next.len() > 9 * terms.len() {
        return Err(Error::Invariant(format!("terminal reduction kept {} of {} terminals", next.len(), terms.len())));
    }
    if !cut_valid {
        return Err(Error::Invariant("terminal reduction produced an invalid cut".into()));
    }
    Ok(Reduction { cut: best, terminals: next, record })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute::brute_kappa;

    fn petersen() -> Graph {
        let mut e: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        e.extend((0..5).map(|i| (i, i + 5)));
        Graph::from_edges(10, &e).unwrap()
    }

    #[test]
    fn all_terminals_on_petersen() {
        let g = petersen();
        let r = terminal_reduction(&Ctx::default(), &g, &(0..10).collect::<Vec<_>>(), 3).unwrap();
        assert!(10 * r.terminals.len() <= 9 * 10);
        if let Some(c) = &r.cut {
            assert!(validate_cut(&g, c));
            assert!(c.value >= brute_kappa(&g).unwrap().unwrap().value);
        }
    }

    #[test]
    fn few_terminals_vanish() {
        let r = terminal_reduction(&Ctx::default(), &petersen(), &[0, 7, 9], 3).unwrap();
        assert!(r.terminals.is_empty());
    }

    #[test]
    fn shrinks_until_empty() {
        let g = petersen();
        let ctx = Ctx::default();
        let mut t: Vec<usize> = (0..10).collect();
        let mut rounds = 0;
        while !t.is_empty() {
            let r = terminal_reduction(&ctx, &g, &t, 3).unwrap();
            assert!(10 * r.terminals.len() <= 9 * t.len());
            t = r.terminals;
            rounds += 1;
        }
        assert!(rounds <= 10);
        assert_eq!(ctx.stats.reductions.lock().unwrap().len(), rounds);
    }
}
