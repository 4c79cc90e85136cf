use super::{cache_key, check_unique_neighbor_expansion, keyed_rng, memo, LeftRegularBipartite};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::ceil_log2;
use crate::oracle::checks::{check_selector, Method};
use rand::Rng;
use serde::Serialize;

const TAG: u64 = 0x5e1e;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// The linear maps form a unique-neighbor expander at the padded parameters.
    UniqueNeighbor,
    /// The selection property itself was checked on every `(L, S)`.
    Exhaustive,
}

/// Subsets of `[ground]`, each of size at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFamily {
    pub ground: usize,
    pub sets: Vec<Vec<usize>>,
    pub certificate: Certificate,
}

/// `(k, eps)`-selector on `[n]`: for disjoint `L, S` with `eps·k < |L| <= k`
/// and `|S| <= k`, some set meets `L` exactly once and misses `S`.
///
/// The ground set is padded to `2^N` by duplicating elements, and each of `d`
/// random linear maps `F_2^N -> F_2^M` contributes its nonempty preimages.
/// Results are cached per parameter set.
pub fn build_selector(cfg: &Config, n: usize, k: usize, eps: f64) -> Result<SubsetFamily> {
    let key = format!("selector {n} {k} {eps} {}", cache_key(cfg));
    memo(key, || construct(cfg, n, k, eps))
}

fn construct(cfg: &Config, n: usize, k: usize, eps: f64) -> Result<SubsetFamily> {
    if k == 0 || !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::Invariant(format!("bad selector parameters k={k} eps={eps}")));
    }
    let lo = (eps * k as f64).floor() as usize + 1;
    let top = k.min(n);
    if top >= lo && n - top <= k {
        return Err(Error::ConstructionFailed(format!("no selector exists for n={n} k={k}: L and S can cover [n]")));
    }
    if top < lo {
        // no admissible L; any family of 2-sets is vacuously a selector
        if n < 2 {
            return Err(Error::ConstructionFailed(format!("ground set of size {n} has no 2-sets")));
        }
        return Ok(SubsetFamily { ground: n, sets: vec![(0..n).collect()], certificate: Certificate::Exhaustive });
    }
    let bits = ceil_log2(n);
    let padded = 1usize << bits;
    let (k_pad, eps_pad) = (4 * k, eps / 8.0);
    let mut spent = 0u64;
    for out_bits in (1..bits).rev() {
        for maps in 1..=4 * bits + 4 {
            for attempt in 0..4 {
                let mut rng = keyed_rng(cfg.seed, TAG, &[n as u64, k as u64, eps.to_bits(), out_bits as u64, maps as u64, attempt]);
                let rows: Vec<Vec<u64>> = (0..maps)
                    .map(|_| (0..out_bits).map(|_| rng.gen_range(0..(1u64 << bits))).collect())
                    .collect();
                let image = |i: usize, x: usize| {
                    rows[i].iter().enumerate().fold(0usize, |acc, (b, &row)| acc | ((((row & x as u64).count_ones() & 1) as usize) << b))
                };
                let m = 1usize << out_bits;
                let table: Vec<Vec<usize>> = (0..padded).map(|x| (0..maps).map(|i| i * m + image(i, x)).collect()).collect();
                let mut buckets = vec![Vec::new(); maps * m];
                for (x, row) in table.iter().enumerate() {
                    for &w in row {
                        buckets[w].push(if x < n { x } else { x - n });
                    }
                }
                let mut sets: Vec<Vec<usize>> = buckets
                    .into_iter()
                    .filter(|s| !s.is_empty())
                    .map(|mut s| {
                        s.sort_unstable();
                        s.dedup();
                        s
                    })
                    .collect();
                if sets.iter().any(|s| s.len() < 2) {
                    continue;
                }
                sets.sort();
                sets.dedup();
                if padded <= 20 {
                    let bip = LeftRegularBipartite { right: maps * m, degree: maps, table };
                    if check_unique_neighbor_expansion(&bip, k_pad, 1.0 - 2.0 * eps_pad, 0) {
                        return Ok(SubsetFamily { ground: n, sets, certificate: Certificate::UniqueNeighbor });
                    }
                }
                if n > 64 {
                    return Err(Error::ConstructionFailed(format!("cannot certify selector on {n} elements")));
                }
                let verdict = check_selector(n, k, eps, &sets, cfg.certify_budget - spent);
                if verdict.holds {
                    return Ok(SubsetFamily { ground: n, sets, certificate: Certificate::Exhaustive });
                }
                spent += verdict.checked;
                if verdict.method == Method::Skipped || spent >= cfg.certify_budget {
                    return Err(Error::ConstructionFailed(format!("cannot certify selector n={n} k={k}: budget")));
                }
            }
        }
    }
    // All 2-sets: {l, x} with l ∈ L and x outside L ∪ S always exists here.
    let pairs: Vec<Vec<usize>> = (0..n).flat_map(|u| (u + 1..n).map(move |v| vec![u, v])).collect();
    if n <= 64 && check_selector(n, k, eps, &pairs, cfg.certify_budget.saturating_sub(spent)).holds {
        return Ok(SubsetFamily { ground: n, sets: pairs, certificate: Certificate::Exhaustive });
    }
    Err(Error::ConstructionFailed(format!("no certified selector for n={n} k={k} eps={eps}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eight_two_half() {
        let s = build_selector(&Config::default(), 8, 2, 0.5).unwrap();
        assert!(s.sets.iter().all(|u| u.len() >= 2));
        assert!(check_selector(8, 2, 0.5, &s.sets, u64::MAX).holds);
        assert_eq!(build_selector(&Config::default(), 8, 2, 0.5).unwrap(), s);
    }

    #[test]
    fn infeasible_when_small() {
        assert!(matches!(build_selector(&Config::default(), 4, 2, 0.5), Err(Error::ConstructionFailed(_))));
    }

    #[test]
    fn tiny_ground_sets_fall_back_to_pairs() {
        let s = build_selector(&Config::default(), 3, 1, 0.25).unwrap();
        assert!(check_selector(3, 1, 0.25, &s.sets, u64::MAX).holds);
    }

    #[test]
    fn ten_three_quarter() {
        let s = build_selector(&Config::default(), 10, 3, 0.25).unwrap();
        assert!(check_selector(10, 3, 0.25, &s.sets, u64::MAX).holds);
    }
}
