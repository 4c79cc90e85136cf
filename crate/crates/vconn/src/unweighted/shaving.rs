use crate::graph::{sorted_symdiff_len, Graph};

/// Members of `A` whose neighborhood is close to the set of vertices seen by
/// at least a tenth of `A`.
///
/// If some `A' ⊆ A` with `|A'| >= 0.99|A|` has all neighborhoods inside a set
/// `B` while missing at most `a` of it, the result contains `A'` and any two
/// of its members differ in at most `5a` neighbors.
pub fn shaving(g: &Graph, set: &[usize], a: usize) -> Vec<usize> {
    let mut hits = vec![0usize; g.n()];
    for &x in set {
        for &v in g.neighbors(x) {
            hits[v] += 1;
        }
    }
    let common: Vec<usize> = (0..g.n()).filter(|&v| 10 * hits[v] >= set.len()).collect();
    let mut out: Vec<usize> = set.iter().copied().filter(|&u| 10 * sorted_symdiff_len(g.neighbors(u), &common) <= 22 * a).collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::symdiff_size;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identical_neighborhoods_survive() {
        let e: Vec<_> = (0..4).flat_map(|u| (4..7).map(move |v| (u, v))).collect();
        let g = Graph::from_edges(7, &e).unwrap();
        assert_eq!(shaving(&g, &[0, 1, 2, 3], 0), vec![0, 1, 2, 3]);
    }

    #[test]
    fn planted_core_is_kept() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (core, b, a) = (200usize, 30usize, 2usize);
        // Vertices 0..core form A', core..core+2 are outliers, B is the next b ids.
        let base = core + 2;
        let mut e = Vec::new();
        for u in 0..core {
            let skip: Vec<usize> = (0..a).map(|_| rng.gen_range(0..b)).collect();
            e.extend((0..b).filter(|j| !skip.contains(j)).map(|j| (u, base + j)));
        }
        for u in core..base {
            e.extend((0..b).filter(|_| rng.gen_bool(0.3)).map(|j| (u, base + b + j)));
        }
        let g = Graph::from_edges(base + 2 * b, &e).unwrap();
        let set: Vec<usize> = (0..base).collect();
        let r = shaving(&g, &set, a);
        assert!((0..core).all(|u| r.contains(&u)));
        for &u in &r {
            for &v in &r {
                assert!(symdiff_size(&g, u, v) <= 5 * a);
            }
        }
    }

    #[test]
    fn result_is_a_subset() {
        let g = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5), (0, 5)]).unwrap();
        let r = shaving(&g, &[0, 2, 4], 0);
        assert!(r.iter().all(|v| [0, 2, 4].contains(v)));
    }
}
