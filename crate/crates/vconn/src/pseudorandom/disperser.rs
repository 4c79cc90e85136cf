use super::{keyed_rng, LeftRegularBipartite};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::ceil_log2;
use crate::oracle::checks::{check_disperser, Method};
use rand::seq::index::sample;
use rand::Rng;

const TAG: u64 = 0xd15e;

/// `(k, eps)`-disperser on `n` left vertices with degree at least `d`; the right
/// side has `max(1, floor(eps * right_factor * k * d))` vertices.
pub fn build_disperser(cfg: &Config, n: usize, k: usize, d: usize, eps: f64) -> Result<LeftRegularBipartite> {
    let right = ((eps * (cfg.disperser_right_factor * k * d) as f64).floor() as usize).max(1);
    build_disperser_with_right(cfg, n, k, d, eps, right)
}

/// Same as [`build_disperser`] with an explicit right size.
///
/// Degrees above `ceil(log2 n)` are reached by building on `gamma·n` left
/// vertices and contracting consecutive groups of `gamma`; left sizes that are
/// not powers of two are built for the next power and restricted. The
/// certification budget is shared by all seeds tried.
pub fn build_disperser_with_right(
    cfg: &Config,
    n: usize,
    k: usize,
    d: usize,
    eps: f64,
    right: usize,
) -> Result<LeftRegularBipartite> {
    if n == 0 || k == 0 || d == 0 || right == 0 || !(0.0..1.0).contains(&eps) {
        return Err(Error::Invariant(format!("bad disperser parameters n={n} k={k} d={d} eps={eps} right={right}")));
    }
    let k = k.min(n);
    let need = ((1.0 - eps) * right as f64 - 1e-9).ceil() as usize;
    if need > k * d {
        return Err(Error::ConstructionFailed(format!("{k} left vertices of degree {d} cannot cover {need} of {right}")));
    }
    if k == n {
        let table = (0..n).map(|v| (0..d).map(|i| (v * d + i) % right).collect()).collect();
        return Ok(LeftRegularBipartite { right, degree: d, table });
    }
    let base = ceil_log2(n).max(1);
    let (gamma, inner_deg) = if d > base { (d.div_ceil(base), base) } else { (1, d) };
    let inner_n = (gamma * n).next_power_of_two();
    let mut spent = 0u64;
    for attempt in 0..cfg.seed_tries {
        let mut rng = keyed_rng(cfg.seed, TAG, &[n as u64, k as u64, d as u64, eps.to_bits(), right as u64, attempt]);
        let inner: Vec<Vec<usize>> = (0..inner_n)
            .map(|_| {
                let mut row = sample(&mut rng, right, inner_deg.min(right)).into_vec();
                while row.len() < inner_deg {
                    row.push(rng.gen_range(0..right));
                }
                row
            })
            .collect();
        let table: Vec<Vec<usize>> = (0..n).map(|v| inner[v * gamma..(v + 1) * gamma].concat()).collect();
        let verdict = check_disperser(&table, right, k, eps, cfg.certify_budget - spent);
        if verdict.holds {
            return Ok(LeftRegularBipartite { right, degree: gamma * inner_deg, table });
        }
        spent += verdict.checked;
        if verdict.method == Method::Skipped || spent >= cfg.certify_budget {
            return Err(Error::ConstructionFailed(format!("cannot certify disperser n={n} k={k}: budget")));
        }
    }
    Err(Error::ConstructionFailed(format!("no certified disperser for n={n} k={k} d={d} eps={eps}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_choose_four() {
        let cfg = Config::default();
        let b = build_disperser(&cfg, 12, 4, 4, 0.125).unwrap();
        assert!(b.is_valid());
        assert!(check_disperser(&b.table, b.right, 4, 0.125, u64::MAX).holds);
        assert_eq!(build_disperser(&cfg, 12, 4, 4, 0.125).unwrap(), b);
    }

    #[test]
    fn full_left_set() {
        let b = build_disperser_with_right(&Config::default(), 5, 5, 3, 0.5, 3).unwrap();
        assert!(check_disperser(&b.table, 3, 5, 0.0, u64::MAX).holds);
    }

    #[test]
    fn impossible_coverage() {
        let r = build_disperser_with_right(&Config::default(), 12, 4, 2, 0.0, 9);
        assert!(matches!(r, Err(Error::ConstructionFailed(_))));
    }

    #[test]
    fn amplified_degree_still_disperses() {
        let b = build_disperser(&Config::default(), 10, 3, 9, 0.25).unwrap();
        assert!(b.degree >= 9);
        assert!(check_disperser(&b.table, b.right, 3, 0.25, u64::MAX).holds);
    }
}
