use fixedbitset::FixedBitSet;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exhaustive,
    Sampled,
    /// Not checked; the reason is in `counterexample`.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub method: Method,
    pub checked: u64,
    pub counterexample: Option<String>,
}

impl Verdict {
    fn pass(checked: u64) -> Self {
        Verdict { holds: true, method: Method::Exhaustive, checked, counterexample: None }
    }
    fn fail(checked: u64, why: String) -> Self {
        Verdict { holds: false, method: Method::Exhaustive, checked, counterexample: Some(why) }
    }
    pub fn skipped(why: String) -> Self {
        Verdict { holds: false, method: Method::Skipped, checked: 0, counterexample: Some(why) }
    }
}

/// Calls `f` on every `k`-subset of `items` in lexicographic order until it returns `false`.
pub fn for_each_subset<F: FnMut(&[usize]) -> bool>(items: &[usize], k: usize, mut f: F) {
    let n = items.len();
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf = vec![0; k];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = items[i];
        }
        if !f(&buf) {
            return;
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
        if r > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    r as u64
}

fn out_lists(ground: usize, pairs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); ground];
    for &(u, v) in pairs {
        out[u].push(v);
    }
    out
}

/// `(A, B, l, r)` crossing: for every `L ⊆ A`, `R ⊆ B` with `|L| >= l`,
/// `|R| >= r`, some pair lies in `L × R`. Only `|L| = l` needs checking and the
/// worst `R` is everything in `B` the family misses from `L`.
pub fn check_crossing_family(ground: usize, a: &[usize], b: &[usize], l: usize, r: usize, pairs: &[(usize, usize)]) -> Verdict {
    if l == 0 || r == 0 {
        return Verdict::fail(0, "l and r must be positive".into());
    }
    let out = out_lists(ground, pairs);
    let mut in_b = vec![false; ground];
    for &v in b {
        in_b[v] = true;
    }
    let mut checked = 0;
    let mut bad = None;
    let mut hit = vec![0u32; ground];
    let mut stamp = 0u32;
    for_each_subset(a, l, |left| {
        checked += 1;
        stamp += 1;
        let mut covered = 0;
        for &u in left {
            for &v in &out[u] {
                if in_b[v] && hit[v] != stamp {
                    hit[v] = stamp;
                    covered += 1;
                }
            }
        }
        if b.len() - covered >= r {
            bad = Some(format!("L={left:?} misses {} vertices of B", b.len() - covered));
            return false;
        }
        true
    });
    match bad {
        Some(w) => Verdict::fail(checked, w),
        None => Verdict::pass(checked),
    }
}

/// Symmetric crossing on `[n]`: every tri-partition with `|R| >= |L| >= |S|/alpha`
/// has a pair in `L × R`. For each `L` the worst `R` is `V - L - N_P(L)`.
pub fn check_symmetric_crossing(n: usize, alpha: f64, pairs: &[(usize, usize)]) -> Verdict {
    assert!(n <= 24, "exhaustive symmetric check limited to n <= 24");
    let out = out_lists(n, pairs);
    let mut masks = vec![0u32; n];
    for u in 0..n {
        for &v in &out[u] {
            masks[u] |= 1 << v;
        }
    }
    let mut checked = 0;
    for lmask in 1u32..(1u32 << n) {
        checked += 1;
        let l = lmask.count_ones() as usize;
        let mut reach = 0u32;
        for u in 0..n {
            if lmask >> u & 1 == 1 {
                reach |= masks[u];
            }
        }
        let nb = (reach & !lmask).count_ones() as usize;
        let r = n - l - nb;
        // with R maximal the separator is exactly the family's neighborhood of L
        if r >= l && (nb as f64) <= alpha * l as f64 + 1e-9 {
            return Verdict::fail(checked, format!("L mask {lmask:#b}: |R|={r}, |S|={nb}"));
        }
    }
    Verdict::pass(checked)
}

/// Selector: for all disjoint `L, S` with `eps·k < |L| <= k`, `|S| <= k`, some
/// set meets `L` exactly once and misses `S`. Larger `S` only hurts, so `S`
/// ranges over sets of size `min(k, n - |L|)`.
pub fn check_selector(n: usize, k: usize, eps: f64, sets: &[Vec<usize>], budget: u64) -> Verdict {
    assert!(n <= 64, "selector check uses 64-bit masks");
    if let Some(u) = sets.iter().find(|u| u.len() < 2) {
        return Verdict::fail(0, format!("set {u:?} has fewer than 2 elements"));
    }
    let masks: Vec<u64> = sets.iter().map(|u| u.iter().fold(0u64, |m, &v| m | 1 << v)).collect();
    let ground: Vec<usize> = (0..n).collect();
    let lo = (eps * k as f64).floor() as usize + 1;
    let mut work = 0u64;
    for size in lo..=k.min(n) {
        work = work.saturating_add(binomial(n, size).saturating_mul(binomial(n - size, k.min(n - size))));
    }
    if work > budget {
        return Verdict::skipped(format!("work {work} exceeds budget {budget}"));
    }
    let mut checked = 0;
    let mut bad = None;
    for size in lo..=k.min(n) {
        for_each_subset(&ground, size, |left| {
            let lmask = left.iter().fold(0u64, |m, &v| m | 1 << v);
            let rest: Vec<usize> = (0..n).filter(|&v| lmask >> v & 1 == 0).collect();
            let cands: Vec<u64> = masks.iter().copied().filter(|m| (m & lmask).count_ones() == 1).collect();
            for_each_subset(&rest, k.min(rest.len()), |s| {
                checked += 1;
                let smask = s.iter().fold(0u64, |m, &v| m | 1 << v);
                if !cands.iter().any(|m| m & smask == 0) {
                    bad = Some(format!("L={left:?} S={s:?}"));
                    return false;
                }
                true
            });
            bad.is_none()
        });
        if bad.is_some() {
            break;
        }
    }
    match bad {
        Some(w) => Verdict::fail(checked, w),
        None => Verdict::pass(checked),
    }
}

/// Disperser: every left set of size `k` reaches at least `(1 - eps)·right` right vertices.
pub fn check_disperser(nbrs: &[Vec<usize>], right: usize, k: usize, eps: f64, budget: u64) -> Verdict {
    let left: Vec<usize> = (0..nbrs.len()).collect();
    let need = ((1.0 - eps) * right as f64 - 1e-9).ceil().max(0.0) as usize;
    if binomial(left.len(), k) > budget {
        return Verdict::skipped(format!("{} subsets exceed budget {budget}", binomial(left.len(), k)));
    }
    let mut seen = FixedBitSet::with_capacity(right);
    let mut checked = 0;
    let mut bad = None;
    for_each_subset(&left, k, |set| {
        checked += 1;
        seen.clear();
        for &u in set {
            for &w in &nbrs[u] {
                seen.insert(w);
            }
        }
        if seen.count_ones(..) < need {
            bad = Some(format!("left set {set:?} covers {} < {need}", seen.count_ones(..)));
            return false;
        }
        true
    });
    match bad {
        Some(w) => Verdict::fail(checked, w),
        None => Verdict::pass(checked),
    }
}

/// Clustering sanity: each partition covers `0..n` exactly, memberships per
/// vertex equal the number of partitions, partitions are few, clusters have
/// small diameter under `dist`, and each of `probes` lies inside some cluster.
pub fn check_clustering<D: Fn(usize, usize) -> u64>(
    n: usize,
    partitions: &[Vec<Vec<usize>>],
    dist: D,
    max_partitions: usize,
    max_diameter: u64,
    probes: &[Vec<usize>],
) -> Verdict {
    let mut checked = 0;
    if partitions.len() > max_partitions {
        return Verdict::fail(0, format!("{} partitions > {max_partitions}", partitions.len()));
    }
    let mut owner = vec![vec![usize::MAX; n]; partitions.len()];
    for (pi, part) in partitions.iter().enumerate() {
        let mut count = 0;
        for (ci, c) in part.iter().enumerate() {
            if c.is_empty() {
                return Verdict::fail(checked, format!("empty cluster in partition {pi}"));
            }
            for &v in c {
                if v >= n || owner[pi][v] != usize::MAX {
                    return Verdict::fail(checked, format!("vertex {v} repeated in partition {pi}"));
                }
                owner[pi][v] = ci;
                count += 1;
            }
        }
        if count != n {
            return Verdict::fail(checked, format!("partition {pi} covers {count} of {n}"));
        }
        for c in part {
            for (i, &u) in c.iter().enumerate() {
                for &v in &c[i + 1..] {
                    checked += 1;
                    let d = dist(u, v);
                    if d > max_diameter {
                        return Verdict::fail(checked, format!("dist({u},{v})={d} > {max_diameter}"));
                    }
                }
            }
        }
    }
    for set in probes {
        checked += 1;
        let Some(&first) = set.first() else { continue };
        let inside = owner.iter().any(|o| set.iter().all(|&v| o[v] == o[first]));
        if !inside {
            return Verdict::fail(checked, format!("set {set:?} split by every partition"));
        }
    }
    Verdict::pass(checked)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerated() {
        let mut all = Vec::new();
        for_each_subset(&[1, 2, 3, 4], 2, |s| {
            all.push(s.to_vec());
            true
        });
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![1, 2]);
        assert_eq!(all[5], vec![3, 4]);
        let mut count = 0;
        for_each_subset(&[0, 1, 2], 0, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 1);
        for_each_subset(&[0, 1, 2], 3, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 2);
    }

    #[test]
    fn complete_family_crosses() {
        let a: Vec<usize> = (0..6).collect();
        let pairs: Vec<_> = a.iter().flat_map(|&u| a.iter().map(move |&v| (u, v))).collect();
        assert!(check_crossing_family(6, &a, &a, 1, 1, &pairs).holds);
        let sym: Vec<_> = pairs.iter().copied().filter(|(u, v)| u != v).collect();
        assert!(check_symmetric_crossing(6, 2.0, &sym).holds);
    }

    #[test]
    fn empty_family_fails() {
        let a: Vec<usize> = (0..6).collect();
        let v = check_crossing_family(6, &a, &a, 2, 3, &[]);
        assert!(!v.holds);
        assert!(v.counterexample.is_some());
        assert!(!check_symmetric_crossing(6, 2.0, &[]).holds);
    }

    #[test]
    fn singleton_complements_select() {
        // all pairs {i, j} form a selector for k = 1
        let sets: Vec<Vec<usize>> = (0..5).flat_map(|i| (i + 1..5).map(move |j| vec![i, j])).collect();
        assert!(check_selector(5, 1, 0.5, &sets, 1 << 20).holds);
        assert!(!check_selector(5, 1, 0.5, &[vec![0]], 1 << 20).holds);
    }

    #[test]
    fn matching_disperser() {
        let nbrs: Vec<Vec<usize>> = (0..4).map(|i| vec![i]).collect();
        assert!(check_disperser(&nbrs, 4, 4, 0.0, 100).holds);
        assert!(!check_disperser(&nbrs, 4, 3, 0.0, 100).holds);
    }
}
