//! Common-neighborhood clustering by repeated ball growing, and exact
//! neighborhood-difference sketches.

use crate::error::{Error, Result};
use crate::graph::{ceil_log2, sorted_difference, weighted_symdiff, Graph, WeightedDigraph};
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

/// Which vertex pairs may become edges of the auxiliary graph.
#[derive(Clone, Copy, Debug)]
pub enum Candidates<'a> {
    Edges(&'a Graph),
    AllPairs,
}

/// Partitions of `0..n`; each partition covers every vertex exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clustering {
    pub n: usize,
    pub partitions: Vec<Vec<Vec<usize>>>,
    /// `(partition, cluster)` for every cluster containing the vertex.
    pub membership: Vec<Vec<(usize, usize)>>,
}

impl Clustering {
    fn new(n: usize, partitions: Vec<Vec<Vec<usize>>>) -> Self {
        let mut membership = vec![Vec::new(); n];
        for (p, part) in partitions.iter().enumerate() {
            for (c, cluster) in part.iter().enumerate() {
                for &v in cluster {
                    membership[v].push((p, c));
                }
            }
        }
        Clustering { n, partitions, membership }
    }

    pub fn cluster(&self, p: usize, c: usize) -> &[usize] {
        &self.partitions[p][c]
    }

    pub fn clusters_of(&self, v: usize) -> impl Iterator<Item = &[usize]> + '_ {
        self.membership[v].iter().map(|&(p, c)| self.cluster(p, c))
    }

    pub fn clusters(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.partitions.iter().flatten().map(|c| c.as_slice())
    }

    /// Partition-count bound `c1·⌈log₂ n⌉` (at least 1).
    pub fn partition_bound(n: usize, c1: usize) -> usize {
        (c1 * ceil_log2(n)).max(1)
    }
}

/// Sparse neighborhood cover over a distance oracle.
///
/// Every `L` that is connected in the auxiliary graph (candidate pairs with
/// `dist <= d`) and has pairwise distance at most `d` lands inside one cluster.
/// Vertices not grown in a round are kept as singletons so every partition
/// covers all of `0..n`.
pub fn cnc<D>(n: usize, candidates: Candidates<'_>, dist: D, d: u64) -> Clustering
where
    D: Fn(usize, usize) -> u64,
{
    let mut aux = vec![Vec::new(); n];
    match candidates {
        Candidates::Edges(g) => {
            for (u, v) in g.edges() {
                if dist(u, v) <= d {
                    aux[u].push(v);
                    aux[v].push(u);
                }
            }
        }
        Candidates::AllPairs => {
            for u in 0..n {
                for v in u + 1..n {
                    if dist(u, v) <= d {
                        aux[u].push(v);
                        aux[v].push(u);
                    }
                }
            }
        }
    }

    let mut partitions = Vec::new();
    let mut active: Vec<usize> = (0..n).collect();
    let mut in_rem = vec![false; n];
    let mut mark = vec![0u32; n];
    let mut stamp = 0u32;
    while !active.is_empty() {
        let mut clusters = Vec::new();
        let mut next = Vec::new();
        for &v in &active {
            in_rem[v] = true;
        }
        for &root in &active {
            if !in_rem[root] {
                continue;
            }
            let mut from_root: HashMap<usize, u64> = HashMap::new();
            let mut ball = |radius: u64, stamp: &mut u32, mark: &mut [u32]| {
                *stamp += 1;
                let mut out = vec![root];
                mark[root] = *stamp;
                let mut head = 0;
                while head < out.len() {
                    let x = out[head];
                    head += 1;
                    for &y in &aux[x] {
                        if in_rem[y] && mark[y] != *stamp {
                            let dy = *from_root.entry(y).or_insert_with(|| dist(root, y));
                            if dy <= radius {
                                mark[y] = *stamp;
                                out.push(y);
                            }
                        }
                    }
                }
                out
            };
            let boundary = |set: &[usize], stamp: &mut u32, mark: &mut [u32]| {
                *stamp += 1;
                for &x in set {
                    mark[x] = *stamp;
                }
                let mut count = 0;
                for &x in set {
                    for &y in &aux[x] {
                        if in_rem[y] && mark[y] != *stamp {
                            mark[y] = *stamp;
                            count += 1;
                        }
                    }
                }
                count
            };

            let mut prev: Vec<usize> = Vec::new();
            let mut cur = vec![root];
            let mut i = 1u64;
            while boundary(&cur, &mut stamp, &mut mark) >= prev.len() || 10 * cur.len() >= 11 * prev.len() {
                if cur.len() == prev.len() && i > 4 * n as u64 + 8 {
                    // unreachable under the triangle inequality; guards a bad oracle
                    break;
                }
                i += 1;
                prev = cur;
                cur = ball(5 * i * d, &mut stamp, &mut mark);
            }
            let tree = ball((5 * i - 3) * d, &mut stamp, &mut mark);

            stamp += 1;
            for &x in &prev {
                mark[x] = stamp;
            }
            next.extend(cur.iter().copied().filter(|&x| mark[x] != stamp));
            for &x in &tree {
                in_rem[x] = false;
            }
            let mut tree = tree;
            tree.sort_unstable();
            clusters.push(tree);
        }
        next.sort_unstable();
        next.dedup();
        let mut covered = vec![false; n];
        for &v in &active {
            covered[v] = true;
        }
        clusters.extend((0..n).filter(|&v| !covered[v]).map(|v| vec![v]));
        partitions.push(clusters);
        active = next;
    }
    if partitions.is_empty() && n > 0 {
        partitions.push((0..n).map(|v| vec![v]).collect());
    }
    Clustering::new(n, partitions)
}

/// Clusters of a weighted digraph under out-neighborhood weighted symmetric
/// difference with threshold `2·ell`, using all pairs as candidates.
pub fn weighted_cnc(d: &WeightedDigraph, ell: u64) -> Vec<Vec<usize>> {
    let c = cnc(d.n(), Candidates::AllPairs, |u, v| weighted_symdiff(d, u, v), 2 * ell);
    c.partitions.into_iter().flatten().collect()
}

static SKETCH_ROUND: AtomicU64 = AtomicU64::new(0);

/// Per-vertex digest for recovering `N(u) △ N(v)` when it has at most `threshold` elements.
///
/// This backend stores the neighborhood itself, so recovery never reports
/// [`Recovery::TooLarge`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoverySketch {
    round: u64,
    pub threshold: usize,
    nbrs: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recovery {
    Set(Vec<usize>),
    TooLarge,
}

pub fn sketch_construct(g: &Graph, threshold: usize) -> Vec<RecoverySketch> {
    let round = SKETCH_ROUND.fetch_add(1, Ordering::Relaxed);
    (0..g.n()).map(|v| RecoverySketch { round, threshold, nbrs: g.neighbors(v).to_vec() }).collect()
}

pub fn sketch_recover(a: &RecoverySketch, b: &RecoverySketch) -> Result<Recovery> {
    if a.round != b.round || a.threshold != b.threshold {
        return Err(Error::MixedSketch);
    }
    let mut out = sorted_difference(&a.nbrs, &b.nbrs);
    out.extend(sorted_difference(&b.nbrs, &a.nbrs));
    out.sort_unstable();
    Ok(Recovery::Set(out))
}

/// `N(u) - N(v)` through the sketches: the part of the difference adjacent to `u`.
pub fn sketch_difference(a: &RecoverySketch, b: &RecoverySketch) -> Result<Recovery> {
    Ok(match sketch_recover(a, b)? {
        Recovery::Set(s) => Recovery::Set(s.into_iter().filter(|x| a.nbrs.binary_search(x).is_ok()).collect()),
        Recovery::TooLarge => Recovery::TooLarge,
    })
}
