//! Deciding `κ(G) < k` through rich sets and gap enlargement.
//!
//! The gap of a graph is `δ − κ`. With a large gap, a small set hitting both
//! sides of a minimum cut in many vertices exists, and flows along the edges
//! of a mixing graph laid over that set find the cut. Gap enlargement removes
//! a vertex that lies in every minimum cut and patches the degrees it lowered
//! with edges that keep every minimum cut intact.

use crate::cut::{better, validate_cut, VertexCut};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::maxflow::{best_pair_cut, connectivity_by_pairs, min_degree_cut, rooted_connectivity, st_cut, weak_separator};
use crate::pseudorandom::build_mixing_graph;
use crate::sparsify::ni_sparsify;
use crate::stats::Ctx;
use crate::unweighted::lift_cut;

/// Result of [`rich_set_or_cut`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RichOrCut {
    /// A cut with fewer than `k` separator vertices.
    Cut(VertexCut),
    /// A set meeting both sides of some minimum cut in at least `tau`
    /// vertices, provided `κ < k`.
    RichSet { set: Vec<usize>, tau: i64 },
}

/// Answer to "is `κ(G) < k`?".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Cut(VertexCut),
    KConnected,
}

/// No non-neighbor was left to patch a degree with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exhausted(pub GapState);

/// A graph `H` on the surviving vertices of `G` together with the best cut of
/// `G` seen so far.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapState {
    /// `H` in local ids; `ids[i]` is the vertex of `G` behind local `i`.
    pub h: Graph,
    pub ids: Vec<usize>,
    /// Vertices of `G` no longer in `H`, sorted.
    pub removed: Vec<usize>,
    /// Best cut of `G`, in ids of `G`.
    pub best: Option<VertexCut>,
    /// Completed [`increase_gap`] rounds.
    pub rounds: usize,
    original: Graph,
}

impl GapState {
    /// `H = G` with the minimum-degree cut as the starting best.
    pub fn new(g: &Graph) -> Self {
        GapState { h: g.clone(), ids: (0..g.n()).collect(), removed: Vec::new(), best: min_degree_cut(g), rounds: 0, original: g.clone() }
    }

    pub fn original(&self) -> &Graph {
        &self.original
    }

    /// A cut of `H` as a cut of `G`: removed vertices join the separator.
    fn lift(&self, c: &VertexCut) -> VertexCut {
        let map = |s: &[usize]| {
            let mut v: Vec<usize> = s.iter().map(|&i| self.ids[i]).collect();
            v.sort_unstable();
            v
        };
        let mut sep = map(&c.sep);
        sep.extend_from_slice(&self.removed);
        sep.sort_unstable();
        let value = sep.len() as u64;
        VertexCut { left: map(&c.left), sep, right: map(&c.right), value }
    }

    fn offer(&mut self, c: Option<VertexCut>) -> Result<()> {
        if let Some(c) = c {
            let lifted = self.lift(&c);
            if !validate_cut(&self.original, &lifted) {
                return Err(Error::Invariant(format!("lifted gap cut {lifted:?} is not a cut of the input")));
            }
            self.best = better(self.best.take(), Some(lifted));
        }
        Ok(())
    }

    fn best_value(&self) -> u64 {
        self.best.as_ref().map_or(u64::MAX, |c| c.value)
    }
}

/// `τ = (δ − k) / 2`, rounded toward zero.
pub fn richness(delta: usize, k: usize) -> i64 {
    (delta as i64 - k as i64) / 2
}

/// Either a cut of size `< k` or a `τ`-rich set for `τ = (δ − k)/2`.
///
/// `g` must be connected.
pub fn rich_set_or_cut(ctx: &Ctx, g: &Graph, k: usize) -> Result<RichOrCut> {
    let n = g.n();
    let delta = g.min_degree();
    let tau = richness(delta, k);
    if 2 * delta > n || g.is_complete() {
        return Ok(RichOrCut::RichSet { set: (0..n).collect(), tau });
    }
    let a = g.min_degree_vertex().expect("nonempty graph");
    let Some(rooted) = rooted_connectivity(ctx, g, a)? else {
        return Ok(RichOrCut::RichSet { set: (0..n).collect(), tau });
    };
    let ka = rooted.value as i64;
    if ka < k as i64 {
        return Ok(RichOrCut::Cut(rooted));
    }
    if ka >= k as i64 + tau {
        return Ok(RichOrCut::RichSet { set: g.neighbors(a).to_vec(), tau });
    }
    let mut sides: Vec<usize> = rooted.left.iter().chain(&rooted.right).copied().collect();
    sides.sort_unstable();
    sides.truncate(k.max(1));
    for set in [&rooted.sep, &sides] {
        if let Some(c) = weak_separator(ctx, g, set)? {
            if c.value < k as u64 {
                return Ok(RichOrCut::Cut(c));
            }
        }
    }
    Ok(RichOrCut::RichSet { set: rooted.sep, tau })
}

/// One round of gap enlargement.
///
/// Removes the smallest vertex `x` of `H` after offering the cut of `κ_H(x)`,
/// then gives every neighbor of `x` whose degree fell below `δ(H)` an edge to
/// its smallest non-neighbor, offering the cut of that pair first. A state
/// whose best cut is already below `k` is returned untouched.
pub fn increase_gap(ctx: &Ctx, mut state: GapState, k: usize) -> Result<std::result::Result<GapState, Exhausted>> {
    if state.best_value() < k as u64 {
        return Ok(Ok(state));
    }
    let h = &state.h;
    if h.n() < 2 {
        return Ok(Err(Exhausted(state)));
    }
    let delta = h.min_degree();
    let x = 0;
    let rooted = rooted_connectivity(ctx, h, x)?;
    let x_nbrs: Vec<usize> = h.neighbors(x).to_vec();
    state.offer(rooted)?;

    let keep: Vec<usize> = (1..state.h.n()).collect();
    let mut next = state.h.induced(&keep);
    let removed_id = state.ids[x];
    state.ids.remove(x);
    let at = state.removed.partition_point(|&v| v < removed_id);
    state.removed.insert(at, removed_id);
    // Local ids shift down by one after dropping vertex 0.
    let lowered: Vec<usize> = x_nbrs.iter().map(|&y| y - 1).filter(|&y| next.degree(y) + 1 == delta).collect();
    for u in lowered {
        // An earlier patch may already have restored u.
        if next.degree(u) >= delta {
            continue;
        }
        let Some(w) = (0..next.n()).find(|&w| w != u && !next.has_edge(u, w)) else {
            state.h = next;
            return Ok(Err(Exhausted(state)));
        };
        let c = st_cut(ctx, &next, u, w, None)?;
        state.offer(c)?;
        next = next.with_extra_edges(&[(u, w)]);
    }
    state.h = next;
    state.rounds += 1;
    Ok(Ok(state))
}

/// Cut degree of the mixing graph for a `rho`-rich set of size `t`.
pub fn mixing_degree(c: f64, t: usize, k: usize, rho: i64) -> usize {
    if t < 2 {
        return 1;
    }
    let rho = rho.max(1) as f64;
    let rho2 = rho.max((t as f64 - k as f64) / 2.0);
    let d = 1.0 + 4.0 * (c * t as f64).powi(2) / (rho * rho2);
    (d.ceil() as usize).clamp(1, t - 1)
}

fn by_pairs(ctx: &Ctx, h: &Graph, k: usize, why: &str) -> Result<Decision> {
    ctx.stats.event(format!("gabow falls back to all pairs: {why}"));
    Ok(match connectivity_by_pairs(ctx, h)? {
        Some(c) if c.value < k as u64 => Decision::Cut(c),
        _ => Decision::KConnected,
    })
}

/// Decides `κ(H) < k` with flows along a mixing graph laid over a rich set.
/// A returned cut is minimum. `gap` is the known lower bound on `δ − κ`.
pub fn large_gap_vc(ctx: &Ctx, h: &Graph, k: usize, gap: usize) -> Result<Decision> {
    let n = h.n();
    if k == 0 || n < 2 || h.is_complete() {
        return Ok(Decision::KConnected);
    }
    if !h.is_connected() {
        return by_pairs(ctx, h, k, "disconnected input");
    }
    let delta = h.min_degree();
    if richness(delta, k) <= 0 {
        return by_pairs(ctx, h, k, &format!("tau <= 0 at delta={delta} k={k} gap={gap}"));
    }
    let (set, tau) = match rich_set_or_cut(ctx, h, k)? {
        RichOrCut::Cut(c) => {
            // A cut below k, not necessarily minimum: search below it.
            let rest = large_gap_vc(ctx, h, c.value as usize, gap)?;
            return Ok(match rest {
                Decision::Cut(d) => Decision::Cut(d),
                Decision::KConnected => Decision::Cut(c),
            });
        }
        RichOrCut::RichSet { set, tau } => (set, tau),
    };
    let t = set.len();
    if t < 2 {
        return by_pairs(ctx, h, k, "rich set with fewer than two vertices");
    }
    let d = mixing_degree(ctx.cfg.mixing_c_target, t, k, tau);
    let mix = match build_mixing_graph(&ctx.cfg, t, d) {
        Ok(m) => m,
        Err(Error::ConstructionFailed(why)) => return by_pairs(ctx, h, k, &why),
        Err(e) => return Err(e),
    };
    let pairs: Vec<(usize, usize)> = mix
        .graph
        .edges()
        .map(|(i, j)| (set[i], set[j]))
        .filter(|&(x, y)| !h.has_edge(x, y))
        .collect();
    Ok(match best_pair_cut(ctx, h, &pairs, Some(k as u64 - 1))? {
        Some(c) if c.value < k as u64 => Decision::Cut(c),
        _ => Decision::KConnected,
    })
}

/// Decides `κ(H) < k` on a sparsified connected `H`, enlarging the gap first
/// when `k >= √n`.
fn decide(ctx: &Ctx, h: &Graph, k: usize) -> Result<Decision> {
    let n = h.n();
    let root = (n as f64).sqrt();
    if (k as f64) < root {
        return large_gap_vc(ctx, h, k, 0);
    }
    let delta = h.min_degree();
    let target = (delta as f64 / root).ceil() as usize;
    let mut state = GapState::new(h);
    for _ in 0..target {
        if state.best_value() < k as u64 || state.h.n() <= 2 {
            break;
        }
        state = match increase_gap(ctx, state, k)? {
            Ok(s) => s,
            Err(Exhausted(_)) => return by_pairs(ctx, h, k, "gap enlargement exhausted"),
        };
    }
    if state.best_value() < k as u64 {
        return Ok(Decision::Cut(state.best.expect("finite best")));
    }
    let removed = state.removed.len();
    if removed >= k {
        return Ok(Decision::KConnected);
    }
    match large_gap_vc(ctx, &state.h, k - removed, state.rounds)? {
        Decision::Cut(c) => Ok(Decision::Cut(state.lift(&c))),
        Decision::KConnected => Ok(Decision::KConnected),
    }
}

/// A minimum vertex cut of `G` when `κ(G) < k`, otherwise `KConnected`.
///
/// Complete graphs have no vertex cut and always report `KConnected`.
pub fn gabow_vc(ctx: &Ctx, g: &Graph, k: usize) -> Result<Decision> {
    let n = g.n();
    if k == 0 || n < 2 || g.is_complete() {
        return Ok(Decision::KConnected);
    }
    let comps = g.components();
    if comps.len() > 1 {
        let right: Vec<usize> = {
            let mut r: Vec<usize> = comps[1..].concat();
            r.sort_unstable();
            r
        };
        return Ok(Decision::Cut(VertexCut { left: comps[0].clone(), sep: Vec::new(), right, value: 0 }));
    }
    let h = ni_sparsify(g, k);
    let mut best: Option<VertexCut> = None;
    let mut bound = k;
    // Each found cut becomes the next threshold, so the last one is minimum.
    while bound > 0 {
        match decide(ctx, &h, bound)? {
            Decision::KConnected => break,
            Decision::Cut(c) => {
                let lifted = lift_cut(ctx, g, &c)?.filter(|l| l.value <= c.value);
                let Some(l) = lifted else {
                    return Err(Error::Invariant(format!("cut {c:?} of the certificate does not lift")));
                };
                bound = l.value as usize;
                best = Some(l);
            }
        }
    }
    match best {
        Some(c) if validate_cut(g, &c) => Ok(Decision::Cut(c)),
        Some(c) => Err(Error::Invariant(format!("gabow produced an invalid cut {c:?}"))),
        None => Ok(Decision::KConnected),
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

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn petersen() -> Graph {
        let mut e: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        e.extend((0..5).map(|i| (i, i + 5)));
        Graph::from_edges(10, &e).unwrap()
    }

    fn two_k6_sharing_two() -> Graph {
        let mut e = Vec::new();
        for block in [[0, 1, 2, 3, 4, 5], [4, 5, 6, 7, 8, 9]] {
            for (i, &u) in block.iter().enumerate() {
                for &v in &block[i + 1..] {
                    e.push((u, v));
                }
            }
        }
        e.sort_unstable();
        e.dedup();
        Graph::from_edges(10, &e).unwrap()
    }

    #[test]
    fn dense_graph_is_its_own_rich_set() {
        let e: Vec<_> = complete(8).edges().filter(|&(u, v)| (u, v) != (0, 1)).collect();
        let g = Graph::from_edges(8, &e).unwrap();
        assert!(matches!(rich_set_or_cut(&Ctx::default(), &g, 3).unwrap(), RichOrCut::RichSet { set, .. } if set.len() == 8));
    }

    #[test]
    fn shared_pair_gives_small_cut() {
        match rich_set_or_cut(&Ctx::default(), &two_k6_sharing_two(), 3).unwrap() {
            RichOrCut::Cut(c) => assert_eq!(c.value, 2),
            other => panic!("expected a cut, got {other:?}"),
        }
    }

    #[test]
    fn complete_graph_exhausts() {
        let r = increase_gap(&Ctx::default(), GapState::new(&complete(5)), 10).unwrap();
        assert!(r.is_err());
    }

    #[test]
    fn matching_removed_round() {
        let n = 8;
        let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !(u % 2 == 0 && v == u + 1)).collect();
        let g = Graph::from_edges(n, &e).unwrap();
        let s = GapState::new(&g);
        let edges = g.m();
        let before = s.best_value();
        let s = increase_gap(&Ctx::default(), s, 6).unwrap().unwrap();
        assert_eq!(s.removed, vec![0]);
        assert_eq!(s.h.n(), n - 1);
        assert!(s.h.m() <= edges);
        assert!(s.best_value() <= before);
        assert!(validate_cut(&g, s.best.as_ref().unwrap()));
        assert!(s.h.min_degree() >= g.min_degree() - 1);
    }

    #[test]
    fn state_below_k_is_kept() {
        let s = GapState::new(&cycle(6));
        let again = increase_gap(&Ctx::default(), s.clone(), 5).unwrap().unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn cycle_has_small_cut() {
        match large_gap_vc(&Ctx::default(), &cycle(8), 3, 0).unwrap() {
            Decision::Cut(c) => assert_eq!(c.value, 2),
            d => panic!("{d:?}"),
        }
        assert_eq!(large_gap_vc(&Ctx::default(), &complete(8), 3, 0).unwrap(), Decision::KConnected);
    }

    #[test]
    fn petersen_decisions() {
        let g = petersen();
        match gabow_vc(&Ctx::default(), &g, 4).unwrap() {
            Decision::Cut(c) => assert_eq!(c.value, 3),
            d => panic!("{d:?}"),
        }
        assert_eq!(gabow_vc(&Ctx::default(), &g, 3).unwrap(), Decision::KConnected);
    }

    #[test]
    fn disconnected_gives_empty_separator() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        match gabow_vc(&Ctx::default(), &g, 1).unwrap() {
            Decision::Cut(c) => assert!(c.sep.is_empty()),
            d => panic!("{d:?}"),
        }
    }

    #[test]
    fn mixing_degree_is_clamped() {
        assert_eq!(mixing_degree(1.0, 10, 3, 2), 9);
        assert_eq!(mixing_degree(0.01, 400, 3, 150), 2);
        assert_eq!(mixing_degree(1.0, 1, 3, 2), 1);
    }

    #[test]
    fn gap_rounds_keep_best_valid_and_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let n = rng.gen_range(8..16);
            let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(0.6)).collect();
            let g = Graph::from_edges(n, &e).unwrap();
            if !g.is_connected() || g.is_complete() {
                continue;
            }
            let mut s = GapState::new(&g);
            for _ in 0..3 {
                let (before, edges) = (s.best_value(), s.h.m());
                s = match increase_gap(&Ctx::default(), s, 1).unwrap() {
                    Ok(s) => s,
                    Err(_) => break,
                };
                assert!(s.best_value() <= before);
                assert!(s.h.m() <= edges);
                assert!(validate_cut(&g, s.best.as_ref().unwrap()));
            }
        }
    }

    #[test]
    fn matches_oracle() {
        let ctx = Ctx::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let n = rng.gen_range(6..22);
            let p = rng.gen_range(0.2..0.9);
            let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
            let g = Graph::from_edges(n, &e).unwrap();
            let kappa = brute_kappa(&g).unwrap().map(|c| c.value);
            let k = rng.gen_range(1..=8);
            match gabow_vc(&ctx, &g, k).unwrap() {
                Decision::Cut(c) => {
                    assert_eq!(Some(c.value), kappa);
                    assert!(c.value < k as u64);
                }
                Decision::KConnected => assert!(kappa.is_none_or(|v| v >= k as u64)),
            }
        }
    }
}
