use super::{build_disperser_with_right, cache_key, memo};
use super::disperser::build_disperser;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::ceil_log2;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Built from certified dispersers.
    Pseudorandom,
    /// All pairs; used when the construction fails or would be larger.
    Complete,
}

/// Deduplicated pairs with a per-source degree index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFamily {
    pairs: Vec<(usize, usize)>,
    degree: Vec<usize>,
    /// Degree bound the construction promises for every source.
    pub declared_bound: usize,
    pub backend: Backend,
}

impl PairFamily {
    pub fn new(mut pairs: Vec<(usize, usize)>, declared_bound: usize, backend: Backend) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        let size = pairs.iter().map(|&(u, _)| u + 1).max().unwrap_or(0);
        let mut degree = vec![0; size];
        for &(u, _) in &pairs {
            degree[u] += 1;
        }
        PairFamily { pairs, degree, declared_bound, backend }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.degree.get(u).copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    /// Renames both endpoints through `map`.
    pub fn mapped(&self, map: &[usize]) -> PairFamily {
        let pairs = self.pairs.iter().map(|&(u, v)| (map[u], map[v])).collect();
        PairFamily::new(pairs, self.declared_bound, self.backend)
    }
}

/// All of `A × B` except `(u, u)`.
pub fn complete_family(a: &[usize], b: &[usize]) -> PairFamily {
    let pairs = a.iter().flat_map(|&u| b.iter().filter(move |&&v| v != u).map(move |&v| (u, v))).collect();
    PairFamily::new(pairs, b.len(), Backend::Complete)
}

fn complete_with_loops(a: &[usize], b: &[usize]) -> PairFamily {
    let pairs = a.iter().flat_map(|&u| b.iter().map(move |&v| (u, v))).collect();
    PairFamily::new(pairs, b.len(), Backend::Complete)
}

/// `(A, B, l, r)`-crossing family: for every `L ⊆ A`, `R ⊆ B` with `|L| >= l`
/// and `|R| >= r` some pair lies in `L × R`. Built from two certified
/// dispersers; fails when either cannot be certified.
pub fn asymmetric_crossing_family(cfg: &Config, a: &[usize], b: &[usize], l: usize, r: usize) -> Result<PairFamily> {
    check_params(a, b, l, r)?;
    build_asymmetric(cfg, a, b, l, r)
}

/// [`asymmetric_crossing_family`], or `A × B` when that fails or is not smaller.
/// Only positions matter, so results are cached by side sizes.
pub fn crossing_family_or_complete(cfg: &Config, a: &[usize], b: &[usize], l: usize, r: usize) -> Result<PairFamily> {
    check_params(a, b, l, r)?;
    let (na, nb) = (a.len(), b.len());
    let key = format!("crossing {na} {nb} {l} {r} {}", cache_key(cfg));
    let base = memo(key, || {
        let (ia, ib): (Vec<usize>, Vec<usize>) = ((0..na).collect(), (0..nb).collect());
        match build_asymmetric(cfg, &ia, &ib, l, r) {
            Ok(fam) if fam.len() < na * nb => Ok(fam),
            Ok(_) | Err(Error::ConstructionFailed(_)) => Ok(complete_with_loops(&ia, &ib)),
            Err(e) => Err(e),
        }
    })?;
    let pairs = base.pairs.iter().map(|&(u, v)| (a[u], b[v])).collect();
    Ok(PairFamily::new(pairs, base.declared_bound, base.backend))
}

fn check_params(a: &[usize], b: &[usize], l: usize, r: usize) -> Result<()> {
    if l == 0 || r == 0 || l > a.len() || r > b.len() {
        return Err(Error::Invariant(format!("crossing parameters l={l} r={r} for |A|={} |B|={}", a.len(), b.len())));
    }
    Ok(())
}

fn build_asymmetric(cfg: &Config, a: &[usize], b: &[usize], l: usize, r: usize) -> Result<PairFamily> {
    let nb = b.len();
    if r == nb {
        let pairs = a.iter().map(|&u| (u, b[0])).collect();
        return Ok(PairFamily::new(pairs, 1, Backend::Pseudorandom));
    }
    if 2 * r > nb {
        // any R with |R| >= r keeps at least |B| - r vertices of this prefix
        let rest = nb - r;
        return build_asymmetric(cfg, a, &b[..2 * rest], l.min(rest), rest);
    }

    let d1 = ceil_log2(nb).max(1);
    let disp_b = build_disperser(cfg, nb, r, d1, 0.125)?;
    let w1 = disp_b.right;
    let d2 = (r * d1).div_ceil(2 * l).max(1);
    let default_w2 = ((0.25 * (cfg.disperser_right_factor * l * d2) as f64).floor() as usize).max(1);
    let disp_a = build_disperser_with_right(cfg, a.len(), l, d2, 0.25, default_w2.min(w1))?;
    let w2 = disp_a.right;

    // spread each vertex of W2 over a block of beta or beta+1 vertices of W1
    let (beta, extra) = (w1 / w2, w1 % w2);
    let block_start = |j: usize| j * beta + j.min(extra);

    let right_deg = disp_b.right_degrees();
    let cap = 4.0 * (nb * disp_b.degree) as f64 / w1 as f64;
    let small: Vec<bool> = right_deg.iter().map(|&x| x as f64 <= cap).collect();
    let mut back = vec![Vec::new(); w1];
    for (v, row) in disp_b.table.iter().enumerate() {
        for &w in row {
            back[w].push(v);
        }
    }

    let mut pairs = Vec::new();
    let mut widest = 0;
    for (i, &u) in a.iter().enumerate() {
        let mut reach = Vec::new();
        for j in disp_a.neighbors(i) {
            reach.extend(block_start(j)..block_start(j + 1));
        }
        widest = widest.max(reach.len());
        for w in reach {
            if small[w] {
                pairs.extend(back[w].iter().map(|&v| (u, b[v])));
            }
        }
    }
    let bound = widest * cap.floor() as usize;
    let fam = PairFamily::new(pairs, bound, Backend::Pseudorandom);
    if fam.max_degree() > bound {
        return Err(Error::Invariant(format!("crossing degree {} above declared {bound}", fam.max_degree())));
    }
    Ok(fam)
}

/// Pairs on `[n]` crossing every tri-partition `(L, S, R)` with
/// `|R| >= |L| >= |S| / alpha`.
///
/// Guesses `l` (a power of two with `l <= |L| < 2l`) and `q` (a power of two
/// with `|L| + |S| <= q < 2(|L| + |S|)`) and takes the `(V, V, l, max(n - q, l))`
/// family. The degree of each piece scales with `q / l < 4(alpha + 1)`.
/// Results are cached per parameter set.
pub fn symmetric_crossing_family(cfg: &Config, n: usize, alpha: f64) -> Result<PairFamily> {
    let key = format!("symmetric {n} {alpha} {}", cache_key(cfg));
    memo(key, || symmetric(cfg, n, alpha))
}

fn symmetric(cfg: &Config, n: usize, alpha: f64) -> Result<PairFamily> {
    let all: Vec<usize> = (0..n).collect();
    if n < 3 || alpha >= n as f64 {
        return Ok(complete_family(&all, &all));
    }
    let mut guesses = Vec::new();
    let mut l = 1;
    while 2 * l <= n {
        let mut q = l;
        while q < 2 * n && q as f64 <= 4.0 * (alpha + 1.0) * l as f64 {
            let r = n.saturating_sub(q).max(l);
            if !guesses.contains(&(l, r)) {
                guesses.push((l, r));
            }
            q *= 2;
        }
        l *= 2;
    }
    let mut pairs = Vec::new();
    let mut bound = 0;
    let mut backend = Backend::Pseudorandom;
    for (l, r) in guesses {
        let fam = crossing_family_or_complete(cfg, &all, &all, l, r)?;
        bound += fam.declared_bound;
        if fam.backend == Backend::Complete {
            backend = Backend::Complete;
        }
        pairs.extend(fam.pairs.iter().copied().filter(|&(u, v)| u != v));
    }
    let fam = PairFamily::new(pairs, bound, backend);
    if fam.len() >= n * (n - 1) {
        return Ok(complete_family(&all, &all));
    }
    Ok(fam)
}
