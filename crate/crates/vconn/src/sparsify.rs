use crate::graph::Graph;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Union of the first `k` scan-first-search forests (maximum adjacency order).
///
/// Each edge `(x, y)` scanned from `x` lands in forest `r(y) + 1`, where `r(y)`
/// counts the scanned neighbors of `y` so far. Keeping forests `1..=k` gives at
/// most `k·n` edges and preserves every local connectivity up to `k`.
pub fn ni_sparsify(g: &Graph, k: usize) -> Graph {
    let n = g.n();
    if k == 0 {
        return Graph::empty(n);
    }
    let mut r = vec![0usize; n];
    let mut scanned = vec![false; n];
    let mut kept = Vec::new();
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> = (0..n).map(|v| (0, Reverse(v))).collect();
    while let Some((rv, Reverse(x))) = heap.pop() {
        if scanned[x] || rv != r[x] {
            continue;
        }
        scanned[x] = true;
        for &y in g.neighbors(x) {
            if scanned[y] {
                continue;
            }
            r[y] += 1;
            if r[y] <= k {
                kept.push((x, y));
            }
            heap.push((r[y], Reverse(y)));
        }
    }
    Graph::from_edges(n, &kept).expect("subgraph edges are valid")
}
