use crate::graph::Digraph;
use serde::Serialize;
use std::cmp::Ordering;

/// Tri-partition `(L, S, R)` with no arc from `L` to `R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexCut {
    pub left: Vec<usize>,
    pub sep: Vec<usize>,
    pub right: Vec<usize>,
    pub value: u64,
}

impl VertexCut {
    /// Orders cuts by value, then separator, then left side.
    pub fn rank(&self, other: &VertexCut) -> Ordering {
        (self.value, &self.sep, &self.left).cmp(&(other.value, &other.sep, &other.left))
    }

    /// Moves every vertex of `extra` (assumed outside the cut) into the separator.
    pub fn extended<G: Digraph + ?Sized>(&self, g: &G, extra: &[usize]) -> VertexCut {
        let mut sep = self.sep.clone();
        sep.extend_from_slice(extra);
        sep.sort_unstable();
        sep.dedup();
        let value = g.weight_of(&sep);
        VertexCut { left: self.left.clone(), sep, right: self.right.clone(), value }
    }

    pub fn sides_swapped(&self) -> VertexCut {
        VertexCut {
            left: self.right.clone(),
            sep: self.sep.clone(),
            right: self.left.clone(),
            value: self.value,
        }
    }
}

/// Result of a global connectivity computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Connectivity {
    Cut(VertexCut),
    /// No vertex cut exists. Unweighted complete graphs carry `n - 1`;
    /// weighted complete digraphs carry no value.
    Complete { value: Option<u64> },
}

impl Connectivity {
    pub fn value(&self) -> Option<u64> {
        match self {
            Connectivity::Cut(c) => Some(c.value),
            Connectivity::Complete { value } => *value,
        }
    }

    pub fn cut(&self) -> Option<&VertexCut> {
        match self {
            Connectivity::Cut(c) => Some(c),
            Connectivity::Complete { .. } => None,
        }
    }
}

/// Checks disjoint cover, nonempty sides, the no-crossing-arc rule and the value.
pub fn validate_cut<G: Digraph + ?Sized>(g: &G, cut: &VertexCut) -> bool {
    let n = g.order();
    if cut.left.is_empty() || cut.right.is_empty() {
        return false;
    }
    if cut.left.len() + cut.sep.len() + cut.right.len() != n {
        return false;
    }
    // 0 unseen, 1 left, 2 sep, 3 right
    let mut side = vec![0u8; n];
    for (tag, part) in [(1u8, &cut.left), (2, &cut.sep), (3, &cut.right)] {
        for &v in part.iter() {
            if v >= n || side[v] != 0 {
                return false;
            }
            side[v] = tag;
        }
    }
    for &u in &cut.left {
        if g.out_nbrs(u).iter().any(|&v| side[v] == 3) {
            return false;
        }
    }
    g.weight_of(&cut.sep) == cut.value
}

/// Builds `(L, S, R)` where `L` is everything reachable from `s` in `G - S`.
/// Returns `None` when nothing is left for `R`.
pub fn cut_from_separator<G: Digraph + ?Sized>(g: &G, sep: &[usize], s: usize) -> Option<VertexCut> {
    let n = g.order();
    let mut state = vec![0u8; n];
    for &v in sep {
        state[v] = 2;
    }
    if state[s] == 2 {
        return None;
    }
    state[s] = 1;
    let mut stack = vec![s];
    while let Some(u) = stack.pop() {
        for &v in g.out_nbrs(u) {
            if state[v] == 0 {
                state[v] = 1;
                stack.push(v);
            }
        }
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (v, &st) in state.iter().enumerate() {
        match st {
            0 => right.push(v),
            1 => left.push(v),
            _ => {}
        }
    }
    if right.is_empty() {
        return None;
    }
    let mut sep = sep.to_vec();
    sep.sort_unstable();
    sep.dedup();
    let value = g.weight_of(&sep);
    Some(VertexCut { left, sep, right, value })
}

/// Keeps the smaller of two optional cuts under [`VertexCut::rank`].
pub fn better(a: Option<VertexCut>, b: Option<VertexCut>) -> Option<VertexCut> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(if y.rank(&x) == Ordering::Less { y } else { x }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, WeightedDigraph};

    fn cut(l: &[usize], s: &[usize], r: &[usize]) -> VertexCut {
        VertexCut { left: l.to_vec(), sep: s.to_vec(), right: r.to_vec(), value: s.len() as u64 }
    }

    #[test]
    fn path_cuts() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(validate_cut(&g, &cut(&[0], &[1], &[2])));
        assert!(!validate_cut(&g, &cut(&[0, 1], &[], &[2])));
    }

    #[test]
    fn directed_cycle_cut() {
        let d = WeightedDigraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)], vec![1, 1, 1]).unwrap();
        assert!(validate_cut(&d, &cut(&[0], &[1], &[2])));
        assert!(!validate_cut(&d, &cut(&[2], &[1], &[0])));
    }

    #[test]
    fn separator_to_cut() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let c = cut_from_separator(&g, &[2], 0).unwrap();
        assert_eq!(c, cut(&[0, 1], &[2], &[3]));
        assert!(cut_from_separator(&g, &[], 0).is_none());
    }
}
