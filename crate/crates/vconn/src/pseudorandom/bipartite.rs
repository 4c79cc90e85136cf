use crate::oracle::checks::{binomial, for_each_subset};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Left-regular bipartite graph given by its neighbor table
/// `table[v][i] = Γ(v, i)`; repeated right ids are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftRegularBipartite {
    pub right: usize,
    pub degree: usize,
    pub table: Vec<Vec<usize>>,
}

impl LeftRegularBipartite {
    pub fn left(&self) -> usize {
        self.table.len()
    }

    /// Right-degree of every right vertex, counting multi-edges.
    pub fn right_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.right];
        for row in &self.table {
            for &w in row {
                deg[w] += 1;
            }
        }
        deg
    }

    /// Distinct right neighbors of a left vertex, sorted.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = self.table[v].clone();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_valid(&self) -> bool {
        self.table.iter().all(|row| row.len() == self.degree && row.iter().all(|&w| w < self.right))
    }
}

fn unique_count(b: &LeftRegularBipartite, set: &[usize], owner: &mut [usize], count: &mut [u8]) -> usize {
    let mut touched = Vec::new();
    for &u in set {
        for &w in &b.table[u] {
            if count[w] == 0 {
                touched.push(w);
                count[w] = 1;
                owner[w] = u;
            } else if owner[w] != u && count[w] == 1 {
                count[w] = 2;
            }
        }
    }
    let unique = touched.iter().filter(|&&w| count[w] == 1).count();
    for w in touched {
        count[w] = 0;
    }
    unique
}

/// Every nonempty left set `S` with `|S| <= k` has at least `alpha·d·|S|` right
/// vertices with exactly one neighbor in `S`. Exhaustive when the left side has
/// at most 20 vertices, otherwise checked on `samples` random sets per size
/// (a failing sample is a definite `false`).
pub fn check_unique_neighbor_expansion(b: &LeftRegularBipartite, k: usize, alpha: f64, samples: usize) -> bool {
    let n = b.left();
    let k = k.min(n);
    let mut owner = vec![usize::MAX; b.right];
    let mut count = vec![0u8; b.right];
    let ok = |set: &[usize], owner: &mut [usize], count: &mut [u8]| {
        unique_count(b, set, owner, count) as f64 + 1e-9 >= alpha * (b.degree * set.len()) as f64
    };
    let left: Vec<usize> = (0..n).collect();
    if n <= 20 {
        for size in 1..=k {
            let mut good = true;
            for_each_subset(&left, size, |s| {
                good = ok(s, &mut owner, &mut count);
                good
            });
            if !good {
                return false;
            }
        }
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b1d ^ (n as u64) << 8 ^ k as u64);
    for size in 1..=k {
        let rounds = (binomial(n, size).min(samples as u64)) as usize;
        for _ in 0..rounds {
            let s: Vec<usize> = sample(&mut rng, n, size).into_vec();
            if !ok(&s, &mut owner, &mut count) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_is_unique_expander() {
        let b = LeftRegularBipartite { right: 6, degree: 1, table: (0..6).map(|i| vec![i]).collect() };
        assert!(check_unique_neighbor_expansion(&b, 6, 1.0, 100));
    }

    #[test]
    fn complete_bipartite_is_not() {
        let b = LeftRegularBipartite { right: 3, degree: 3, table: vec![vec![0, 1, 2]; 4] };
        assert!(check_unique_neighbor_expansion(&b, 1, 1.0, 100));
        assert!(!check_unique_neighbor_expansion(&b, 2, 0.6, 100));
    }
}
