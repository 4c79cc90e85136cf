//! Terminal vertex expansion and a reference expander decomposition.

use crate::cut::{cut_from_separator, VertexCut};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::maxflow::{min_st_separator, Separation};
use crate::stats::Ctx;
use serde::Serialize;
use std::cmp::Ordering;

/// Exact nonnegative fraction.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `self < phi`, decided without rounding `self`.
    pub fn below(self, phi: f64) -> bool {
        (self.num as f64) < phi * self.den as f64
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

/// `|S| / min(|T ∩ (L ∪ S)|, |T ∩ (R ∪ S)|)`.
pub fn terminal_expansion(g: &Graph, terms: &[usize], cut: &VertexCut) -> Result<Ratio> {
    let mut in_t = vec![false; g.n()];
    for &t in terms {
        in_t[t] = true;
    }
    let count = |set: &[usize]| set.iter().filter(|&&v| in_t[v]).count() as u64;
    let s = count(&cut.sep);
    let den = (count(&cut.left) + s).min(count(&cut.right) + s);
    if den == 0 {
        return Err(Error::UndefinedExpansion);
    }
    Ok(Ratio { num: cut.sep.len() as u64, den })
}

/// How a piece was certified free of sparse cuts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PieceCheck {
    /// Every separator of the piece was examined.
    Exhaustive,
    /// Minimum separators between sampled terminal pairs were examined.
    Probed,
}

/// `X` plus pieces with no edges between them; together they partition `V`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpanderDecomposition {
    pub x: Vec<usize>,
    pub pieces: Vec<Vec<usize>>,
    pub checks: Vec<PieceCheck>,
    pub phi: f64,
}

/// The removed set grew past `x_budget_frac·|T|`. `sparsest` is the expansion
/// of the cut that broke the budget.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BudgetExceeded {
    pub removed: usize,
    pub sparsest: Ratio,
}

/// Largest piece searched exhaustively.
const EXHAUSTIVE_LIMIT: usize = 16;
/// Sources per piece used by the flow probes.
const PROBE_SOURCES: usize = 4;

/// Splits off `(T, phi)`-sparse cuts until none is found, moving separators into `X`.
pub fn expander_decomposition(
    ctx: &Ctx,
    g: &Graph,
    terms: &[usize],
    phi: f64,
) -> Result<std::result::Result<ExpanderDecomposition, BudgetExceeded>> {
    if terms.is_empty() {
        return Err(Error::Invariant("expander decomposition needs terminals".into()));
    }
    let n = g.n();
    let mut in_t = vec![false; n];
    for &t in terms {
        in_t[t] = true;
    }
    let budget = ctx.cfg.x_budget_frac * terms.len() as f64;
    let mut x = Vec::new();
    let mut pieces = Vec::new();
    let mut checks = Vec::new();
    let mut stack: Vec<Vec<usize>> = g.components();
    stack.reverse();
    while let Some(piece) = stack.pop() {
        let sub = g.induced(&piece);
        let local_t: Vec<usize> = (0..piece.len()).filter(|&i| in_t[piece[i]]).collect();
        let (found, check) = if piece.len() <= EXHAUSTIVE_LIMIT {
            (sparsest_exhaustive(&sub, &local_t), PieceCheck::Exhaustive)
        } else {
            (sparsest_probed(ctx, &sub, &local_t)?, PieceCheck::Probed)
        };
        match found {
            Some((h, cut)) if h.below(phi) => {
                x.extend(cut.sep.iter().map(|&i| piece[i]));
                if x.len() as f64 >= budget {
                    return Ok(Err(BudgetExceeded { removed: x.len(), sparsest: h }));
                }
                let mut parts = crate::graph::components_avoiding(&sub, &cut.sep);
                parts.reverse();
                for p in parts {
                    stack.push(p.into_iter().map(|i| piece[i]).collect());
                }
            }
            _ => {
                pieces.push(piece);
                checks.push(check);
            }
        }
    }
    x.sort_unstable();
    let mut order: Vec<usize> = (0..pieces.len()).collect();
    order.sort_by_key(|&i| pieces[i][0]);
    let pieces = order.iter().map(|&i| pieces[i].clone()).collect();
    let checks = order.iter().map(|&i| checks[i]).collect();
    Ok(Ok(ExpanderDecomposition { x, pieces, checks, phi }))
}

/// Runs [`expander_decomposition`] from `cfg.expander_phi`, halving `phi` below
/// the offending cut's expansion whenever the budget breaks.
pub fn decompose(ctx: &Ctx, g: &Graph, terms: &[usize]) -> Result<ExpanderDecomposition> {
    let mut phi = ctx.cfg.expander_phi;
    loop {
        match expander_decomposition(ctx, g, terms, phi)? {
            Ok(d) => return Ok(d),
            Err(b) => {
                if b.sparsest.num == 0 {
                    return Err(Error::Invariant("sparse cut with an empty separator inside a component".into()));
                }
                while b.sparsest.below(phi) {
                    phi /= 2.0;
                }
                ctx.stats.event(format!("expander budget exceeded ({} removed), phi lowered to {phi}", b.removed));
            }
        }
    }
}

/// Sparsest cut of a connected piece with at most [`EXHAUSTIVE_LIMIT`]
/// vertices, over every separator and every split of the remaining components.
fn sparsest_exhaustive(g: &Graph, terms: &[usize]) -> Option<(Ratio, VertexCut)> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u)).collect();
    let tmask: u32 = terms.iter().fold(0, |m, &t| m | 1 << t);
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut best: Option<(Ratio, u32, u32)> = None;
    for s in 1..full {
        let rest = full & !s;
        if rest.count_ones() < 2 {
            continue;
        }
        let mut comps = Vec::new();
        let mut left = rest;
        while left != 0 {
            let seed = left & left.wrapping_neg();
            let mut comp = seed;
            loop {
                let grow = comp | (comp.iter_bits().fold(0, |m, v| m | adj[v]) & rest);
                if grow == comp {
                    break;
                }
                comp = grow;
            }
            left &= !comp;
            comps.push(comp);
        }
        if comps.len() < 2 {
            continue;
        }
        let ts = (s & tmask).count_ones() as u64;
        let counts: Vec<u32> = comps.iter().map(|c| (c & tmask).count_ones()).collect();
        let total: u32 = counts.iter().sum();
        // Subset sums of terminal mass with component 0 on the left and the right side nonempty.
        let mut all_left: u64 = 1 << counts[0];
        let mut split: u64 = 0;
        let mut pick: Vec<(u64, u64)> = Vec::new();
        for &c in &counts[1..] {
            pick.push((all_left, split));
            split = (split << c) | split | all_left;
            all_left <<= c;
        }
        let (mut best_mass, mut best_sum) = (None, 0u32);
        for sum in 0..=total {
            if split >> sum & 1 == 1 {
                let m = sum.min(total - sum);
                if best_mass.map_or(true, |b| m > b) {
                    best_mass = Some(m);
                    best_sum = sum;
                }
            }
        }
        let Some(m) = best_mass else { continue };
        let den = ts + m as u64;
        if den == 0 {
            continue;
        }
        let h = Ratio { num: s.count_ones() as u64, den };
        if best.as_ref().map_or(true, |(b, _, _)| h < *b) {
            let lmask = reconstruct(&comps, &counts, &pick, best_sum);
            best = Some((h, s, lmask));
        }
    }
    let (h, s, l) = best?;
    let bits = |m: u32| (0..n).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>();
    let r = full & !s & !l;
    Some((h, VertexCut { left: bits(l), sep: bits(s), right: bits(r), value: s.count_ones() as u64 }))
}

/// Left side realizing terminal mass `target` given the DP snapshots.
fn reconstruct(comps: &[u32], counts: &[u32], pick: &[(u64, u64)], target: u32) -> u32 {
    let mut left = 0u32;
    let mut sum = target;
    let mut need_split = true;
    for j in (1..comps.len()).rev() {
        let (all_left, split) = pick[j - 1];
        let c = counts[j];
        if need_split {
            if split >> sum & 1 == 1 {
                continue;
            }
            if all_left >> sum & 1 == 1 {
                need_split = false;
                continue;
            }
            left |= comps[j];
            sum -= c;
        } else {
            left |= comps[j];
            sum -= c;
        }
    }
    left | comps[0]
}

trait Bits {
    fn iter_bits(self) -> BitIter;
}

impl Bits for u32 {
    fn iter_bits(self) -> BitIter {
        BitIter(self)
    }
}

struct BitIter(u32);

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// Sparsest among minimum separators between a few terminal sources and every
/// other non-adjacent terminal.
fn sparsest_probed(ctx: &Ctx, g: &Graph, terms: &[usize]) -> Result<Option<(Ratio, VertexCut)>> {
    let mut best: Option<(Ratio, VertexCut)> = None;
    for &a in terms.iter().take(PROBE_SOURCES) {
        for &b in terms {
            if b <= a || g.has_edge(a, b) {
                continue;
            }
            let Separation::Separator { sep, .. } = min_st_separator(ctx, g, a, b)? else { continue };
            let Some(cut) = cut_from_separator(g, &sep, a) else { continue };
            let h = terminal_expansion(g, terms, &cut)?;
            if best.as_ref().map_or(true, |(x, _)| h < *x) {
                best = Some((h, cut));
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;
    use crate::cut::validate_cut;

    fn complete(n: usize) -> Graph {
        let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    /// Two K5 on 0..5 and 6..11 joined through vertex 5.
    fn bowtie() -> Graph {
        let mut e = Vec::new();
        for base in [0, 6] {
            for u in base..base + 5 {
                for v in u + 1..base + 5 {
                    e.push((u, v));
                }
                e.push((u, 5));
            }
        }
        Graph::from_edges(11, &e).unwrap()
    }

    #[test]
    fn cycle_six_balanced_cut() {
        let cut = VertexCut { left: vec![1, 2], sep: vec![0, 3], right: vec![4, 5], value: 2 };
        let h = terminal_expansion(&cycle(6), &(0..6).collect::<Vec<_>>(), &cut).unwrap();
        assert_eq!(h, Ratio { num: 2, den: 4 });
    }

    #[test]
    fn no_terminal_mass_is_undefined() {
        let cut = VertexCut { left: vec![1, 2], sep: vec![0, 3], right: vec![4, 5], value: 2 };
        assert_eq!(terminal_expansion(&cycle(6), &[4, 5], &cut), Err(Error::UndefinedExpansion));
    }

    #[test]
    fn clique_is_one_piece() {
        let g = complete(7);
        let d = expander_decomposition(&Ctx::default(), &g, &(0..7).collect::<Vec<_>>(), 0.5).unwrap().unwrap();
        assert!(d.x.is_empty());
        assert_eq!(d.pieces, vec![(0..7).collect::<Vec<_>>()]);
    }

    #[test]
    fn bowtie_splits_at_the_joint() {
        let cfg = Config { x_budget_frac: 1.0, ..Config::default() };
        let d = expander_decomposition(&Ctx::new(cfg), &bowtie(), &(0..11).collect::<Vec<_>>(), 0.5).unwrap().unwrap();
        assert_eq!(d.x, vec![5]);
        assert_eq!(d.pieces, vec![vec![0, 1, 2, 3, 4], vec![6, 7, 8, 9, 10]]);
    }

    #[test]
    fn budget_forces_lower_phi() {
        let ctx = Ctx::default();
        let all: Vec<usize> = (0..11).collect();
        assert!(expander_decomposition(&ctx, &bowtie(), &all, 0.5).unwrap().is_err());
        let d = decompose(&ctx, &bowtie(), &all).unwrap();
        assert!(d.x.is_empty());
        assert!(d.phi <= 1.0 / 6.0);
    }

    #[test]
    fn single_terminal_is_one_piece() {
        let d = expander_decomposition(&Ctx::default(), &bowtie(), &[3], 0.5).unwrap().unwrap();
        assert!(d.x.is_empty());
        assert_eq!(d.pieces.len(), 1);
    }

    #[test]
    fn exhaustive_cut_is_valid_and_sparsest() {
        let g = cycle(10);
        let all: Vec<usize> = (0..10).collect();
        let (h, cut) = sparsest_exhaustive(&g, &all).unwrap();
        assert!(validate_cut(&g, &cut));
        assert_eq!(h, terminal_expansion(&g, &all, &cut).unwrap());
        assert_eq!(h, Ratio { num: 2, den: 6 });
    }

    #[test]
    fn probes_find_a_cut_on_large_cycles() {
        let g = cycle(30);
        let all: Vec<usize> = (0..30).collect();
        let (h, cut) = sparsest_probed(&Ctx::default(), &g, &all).unwrap().unwrap();
        assert!(validate_cut(&g, &cut));
        assert!(h <= Ratio { num: 2, den: 3 });
    }
}
