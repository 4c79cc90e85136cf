use super::brute::{brute_kappa, brute_kappa_weighted};
use crate::cut::{validate_cut, VertexCut};
use crate::error::{Error, Result};
use crate::graph::{Graph, WeightedDigraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlantedKind {
    /// Small `L`, large `R`.
    Unbalanced,
    /// `|L|` and `|R|` comparable.
    BalancedTerminal,
    /// Weighted digraph with `w(R) >= 16 w(L)`.
    Lopsided,
    /// Weighted digraph with `w(L) <= w(R) <= 4 w(L)`.
    Symmetric,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlantedParams {
    pub left: usize,
    pub sep: usize,
    pub right: usize,
    /// Edge probability inside `R`, from `S` to `R`, and (digraphs) back-arcs.
    pub density: f64,
    pub max_weight: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlantedGraph {
    Undirected(Graph),
    Weighted(WeightedDigraph),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlantedInstance {
    pub graph: PlantedGraph,
    pub cut: VertexCut,
    pub kind: PlantedKind,
    pub params: PlantedParams,
    pub seed: u64,
}

const RETRIES: u64 = 200;

/// Rejection-samples an instance whose planted cut is a verified minimum cut.
/// Vertex ids are shuffled so the planted sides are not contiguous.
pub fn generate_planted(kind: PlantedKind, params: PlantedParams, seed: u64) -> Result<PlantedInstance> {
    let PlantedParams { left, sep, right, .. } = params;
    if left == 0 || right == 0 {
        return Err(Error::GenerationFailed("both sides must be nonempty".into()));
    }
    let directed = matches!(kind, PlantedKind::Lopsided | PlantedKind::Symmetric);
    if !directed && sep + 1 >= left + sep + right {
        return Err(Error::GenerationFailed("separator leaves no room for a cut".into()));
    }
    for attempt in 0..RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9).wrapping_add(attempt));
        let inst = if directed { build_digraph(kind, params, &mut rng) } else { build_graph(params, &mut rng) };
        if let Some((graph, cut)) = inst {
            return Ok(PlantedInstance { graph, cut, kind, params, seed });
        }
    }
    Err(Error::GenerationFailed(format!("no verified instance for {kind:?} {params:?}")))
}

fn shuffle(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

fn sides(perm: &[usize], left: usize, sep: usize) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let mut l = perm[..left].to_vec();
    let mut s = perm[left..left + sep].to_vec();
    let mut r = perm[left + sep..].to_vec();
    l.sort_unstable();
    s.sort_unstable();
    r.sort_unstable();
    (l, s, r)
}

fn build_graph(p: PlantedParams, rng: &mut ChaCha8Rng) -> Option<(PlantedGraph, VertexCut)> {
    let n = p.left + p.sep + p.right;
    let perm = shuffle(n, rng);
    let (l, s, r) = sides(&perm, p.left, p.sep);
    let mut edges = Vec::new();
    for (i, &u) in l.iter().enumerate() {
        for &v in &l[i + 1..] {
            edges.push((u, v));
        }
        for &v in &s {
            edges.push((u, v));
        }
    }
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            if rng.gen_bool(p.density) {
                edges.push((u, v));
            }
        }
        for &v in &r {
            if rng.gen_bool(p.density) {
                edges.push((u, v));
            }
        }
    }
    for (i, &u) in r.iter().enumerate() {
        for &v in &r[i + 1..] {
            if rng.gen_bool(p.density) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::from_edges(n, &edges).ok()?;
    let cut = VertexCut { left: l, sep: s.clone(), right: r, value: s.len() as u64 };
    if !validate_cut(&g, &cut) {
        return None;
    }
    let best = brute_kappa(&g).ok()??;
    (best.value == cut.value).then_some((PlantedGraph::Undirected(g), cut))
}

fn build_digraph(kind: PlantedKind, p: PlantedParams, rng: &mut ChaCha8Rng) -> Option<(PlantedGraph, VertexCut)> {
    let n = p.left + p.sep + p.right;
    let perm = shuffle(n, rng);
    let (l, s, r) = sides(&perm, p.left, p.sep);
    let w_max = p.max_weight.max(1);
    let mut weights = vec![1u64; n];
    for &v in &s {
        weights[v] = rng.gen_range(1..=w_max);
    }
    match kind {
        PlantedKind::Lopsided => {
            for &v in &l {
                weights[v] = 1;
            }
            for &v in &r {
                weights[v] = rng.gen_range(1..=w_max);
            }
        }
        _ => {
            for &v in l.iter().chain(&r) {
                weights[v] = rng.gen_range(1..=w_max);
            }
        }
    }
    let wl: u64 = l.iter().map(|&v| weights[v]).sum();
    let wr: u64 = r.iter().map(|&v| weights[v]).sum();
    let shape_ok = match kind {
        PlantedKind::Lopsided => wr >= 16 * wl,
        _ => {
            let (a, b) = (wl.min(wr), wl.max(wr));
            b <= 4 * a
        }
    };
    if !shape_ok {
        return None;
    }
    let mut side = vec![0u8; n];
    for &v in &s {
        side[v] = 1;
    }
    for &v in &r {
        side[v] = 2;
    }
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let keep = match (side[u], side[v]) {
                (0, 2) => false,
                (0, 0) | (0, 1) | (1, 2) => true,
                _ => rng.gen_bool(p.density),
            };
            if keep {
                arcs.push((u, v));
            }
        }
    }
    let d = WeightedDigraph::from_arcs(n, &arcs, weights).ok()?;
    let value = s.iter().map(|&v| d.weight(v)).sum();
    let cut = VertexCut { left: l, sep: s, right: r, value };
    if !validate_cut(&d, &cut) {
        return None;
    }
    let best = brute_kappa_weighted(&d).ok()??;
    (best.value == cut.value).then_some((PlantedGraph::Weighted(d), cut))
}

/// Re-verifies that the stored cut is still a minimum cut.
pub fn verify_planted(inst: &PlantedInstance) -> bool {
    match &inst.graph {
        PlantedGraph::Undirected(g) => {
            validate_cut(g, &inst.cut)
                && brute_kappa(g).ok().flatten().is_some_and(|c| c.value == inst.cut.value)
        }
        PlantedGraph::Weighted(d) => {
            validate_cut(d, &inst.cut)
                && brute_kappa_weighted(d).ok().flatten().is_some_and(|c| c.value == inst.cut.value)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unbalanced_example() {
        let p = PlantedParams { left: 2, sep: 3, right: 20, density: 0.8, max_weight: 1 };
        let inst = generate_planted(PlantedKind::Unbalanced, p, 1).unwrap();
        assert_eq!(inst.cut.value, 3);
        assert!(verify_planted(&inst));
        assert_eq!(generate_planted(PlantedKind::Unbalanced, p, 1).unwrap(), inst);
    }

    #[test]
    fn lopsided_example() {
        let p = PlantedParams { left: 1, sep: 3, right: 10, density: 0.7, max_weight: 8 };
        let inst = generate_planted(PlantedKind::Lopsided, p, 2).unwrap();
        assert!(verify_planted(&inst));
    }

    #[test]
    fn infeasible_params() {
        let p = PlantedParams { left: 1, sep: 5, right: 0, density: 0.5, max_weight: 1 };
        assert!(matches!(generate_planted(PlantedKind::Unbalanced, p, 0), Err(Error::GenerationFailed(_))));
        let p = PlantedParams { left: 1, sep: 5, right: 1, density: 0.0, max_weight: 1 };
        assert!(matches!(generate_planted(PlantedKind::Unbalanced, p, 0), Err(Error::GenerationFailed(_))));
    }
}
