use proptest::prelude::*;
use vconn::cut::cut_from_separator;
use vconn::gabow::{gabow_vc, increase_gap, Decision, GapState};
use vconn::graph::{sorted_symdiff_len, symdiff_size};
use vconn::maxflow::{min_st_separator, Separation};
use vconn::oracle::brute::{brute_kappa, brute_kappa_weighted, brute_pair_kappa, PairKappa};
use vconn::oracle::checks::{check_crossing_family, check_selector};
use vconn::pseudorandom::crossing_family_or_complete;
use vconn::pseudorandom::build_selector;
use vconn::sparsify::ni_sparsify;
use vconn::unweighted::vertex_connectivity_unweighted;
use vconn::weighted::vertex_connectivity_weighted;
use vconn::{validate_cut, Config, Ctx, Digraph, Graph, WeightedDigraph};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn digraph(max_n: usize) -> impl Strategy<Value = WeightedDigraph> {
    (2..=max_n).prop_flat_map(|n| {
        (proptest::collection::vec(any::<bool>(), n * (n - 1)), proptest::collection::vec(1u64..=6, n)).prop_map(
            move |(bits, w)| {
                let pairs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)));
                let arcs: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
                WeightedDigraph::from_arcs(n, &arcs, w).unwrap()
            },
        )
    })
}

fn sorted_set(max: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::btree_set(0..max, 0..max).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symdiff_is_a_metric(a in sorted_set(20), b in sorted_set(20), c in sorted_set(20)) {
        prop_assert_eq!(sorted_symdiff_len(&a, &a), 0);
        prop_assert_eq!(sorted_symdiff_len(&a, &b), sorted_symdiff_len(&b, &a));
        prop_assert!(sorted_symdiff_len(&a, &c) <= sorted_symdiff_len(&a, &b) + sorted_symdiff_len(&b, &c));
    }

    #[test]
    fn neighborhood_symdiff_triangle(g in graph(10), u in 0usize..10, v in 0usize..10, w in 0usize..10) {
        let n = g.n();
        let (u, v, w) = (u % n, v % n, w % n);
        prop_assert!(symdiff_size(&g, u, w) <= symdiff_size(&g, u, v) + symdiff_size(&g, v, w));
    }

    #[test]
    fn separator_matches_pair_oracle(g in graph(10), s in 0usize..10, t in 0usize..10) {
        let n = g.n();
        let (s, t) = (s % n, t % n);
        prop_assume!(s != t);
        let ctx = Ctx::default();
        match (min_st_separator(&ctx, &g, s, t).unwrap(), brute_pair_kappa(&g, s, t)) {
            (Separation::NoSeparator, PairKappa::NoSeparator) => {}
            (Separation::Separator { value, sep }, PairKappa::Value(want)) => {
                prop_assert_eq!(value, want);
                prop_assert_eq!(g.weight_of(&sep), value);
                let cut = cut_from_separator(&g, &sep, s).unwrap();
                prop_assert!(validate_cut(&g, &cut));
                prop_assert!(cut.left.contains(&s) && cut.right.contains(&t));
            }
            (got, want) => prop_assert!(false, "flow {:?} vs oracle {:?}", got, want),
        }
    }

    #[test]
    fn certificate_keeps_small_pair_connectivity(g in graph(10), k in 1usize..5) {
        let h = ni_sparsify(&g, k);
        prop_assert!(h.m() <= k * g.n());
        for (u, v) in h.edges() {
            prop_assert!(g.has_edge(u, v));
        }
        for s in 0..g.n() {
            for t in s + 1..g.n() {
                let cap = |p: PairKappa| match p {
                    PairKappa::Value(x) => x.min(k as u64),
                    PairKappa::NoSeparator => k as u64,
                };
                if g.has_edge(s, t) {
                    continue;
                }
                prop_assert_eq!(cap(brute_pair_kappa(&h, s, t)), cap(brute_pair_kappa(&g, s, t)));
            }
        }
    }

    #[test]
    fn unweighted_matches_oracle(g in graph(11)) {
        let ctx = Ctx::default();
        let got = vertex_connectivity_unweighted(&ctx, &g).unwrap();
        let want = brute_kappa(&g).unwrap().map_or(g.n() as u64 - 1, |c| c.value);
        prop_assert_eq!(got.value(), Some(want));
        if let Some(c) = got.cut() {
            prop_assert!(validate_cut(&g, c));
        }
    }

    #[test]
    fn weighted_matches_oracle(d in digraph(8)) {
        let ctx = Ctx::default();
        let got = vertex_connectivity_weighted(&ctx, &d).unwrap();
        let want = brute_kappa_weighted(&d).unwrap().map(|c| c.value);
        prop_assert_eq!(got.value(), want);
        if let Some(c) = got.cut() {
            prop_assert!(validate_cut(&d, c));
        }
    }

    #[test]
    fn gabow_decides_like_oracle(g in graph(11), k in 1usize..6) {
        prop_assume!(!g.is_complete());
        let kappa = brute_kappa(&g).unwrap().unwrap().value;
        match gabow_vc(&Ctx::default(), &g, k).unwrap() {
            Decision::Cut(c) => {
                prop_assert!(kappa < k as u64);
                prop_assert_eq!(c.value, kappa);
                prop_assert!(validate_cut(&g, &c));
            }
            Decision::KConnected => prop_assert!(kappa >= k as u64),
        }
    }

    #[test]
    fn gap_rounds_never_lose_the_best_cut(g in graph(12), k in 1usize..5) {
        prop_assume!(g.is_connected() && !g.is_complete());
        let ctx = Ctx::default();
        let mut state = GapState::new(&g);
        let mut last = state.best.as_ref().map(|c| c.value);
        for _ in 0..3 {
            state = match increase_gap(&ctx, state, k).unwrap() {
                Ok(s) => s,
                Err(_) => break,
            };
            let now = state.best.as_ref().map(|c| c.value);
            prop_assert!(now <= last || last.is_none());
            if let Some(c) = &state.best {
                prop_assert!(validate_cut(&g, c));
            }
            last = now;
        }
    }

    #[test]
    fn crossing_families_cross(
        na in 1usize..7, nb in 1usize..7, l in 1usize..4, r in 1usize..4, seed in any::<u64>(),
    ) {
        let cfg = Config { seed, ..Config::default() };
        let a: Vec<usize> = (0..na).collect();
        let b: Vec<usize> = (na..na + nb).collect();
        let fam = crossing_family_or_complete(&cfg, &a, &b, l.min(na), r.min(nb)).unwrap();
        let v = check_crossing_family(na + nb, &a, &b, l.min(na), r.min(nb), fam.pairs());
        prop_assert!(v.holds, "{:?}", v.counterexample);
    }

    #[test]
    fn selectors_select(n in 3usize..10, k in 1usize..3, seed in any::<u64>()) {
        prop_assume!(n > 2 * k);
        let cfg = Config { seed, ..Config::default() };
        let s = build_selector(&cfg, n, k, 0.25).unwrap();
        prop_assert!(check_selector(n, k, 0.25, &s.sets, u64::MAX).holds);
    }
}
