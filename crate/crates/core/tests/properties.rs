mod common;

use proptest::prelude::*;
use proptest::sample::subsequence;

use ooc_design::clique::{build_graph, enumerate_cliques, greedy_clique, CodeGraph};
use ooc_design::code_model::{
    conforms_to_ranges, dopr_from_wpr, is_standard, standardize, wpr_from_binary, wpr_from_dopr,
};
use ooc_design::correlation::{
    autocorr_bruteforce, autocorr_edop, crosscorr_bruteforce, crosscorr_edop, johnson_bound,
};
use ooc_design::designer::design_fixed_detailed;
use ooc_design::edop::{check_complement_closure, edop_full, edop_partial, zero_augment};
use ooc_design::{BinaryCode, CodeParams, Dopr, PartialDopr, Wpr};

fn wpr_strategy(max_n: usize, max_w: usize) -> impl Strategy<Value = Wpr> {
    (3..=max_n)
        .prop_flat_map(move |n| (Just(n), 2..=max_w.min(n - 1)))
        .prop_flat_map(|(n, w)| (Just(n), subsequence((0..n).collect::<Vec<_>>(), w)))
        .prop_map(|(n, p)| Wpr::new(p, n).unwrap())
}

fn pair_strategy(max_n: usize, max_w: usize) -> impl Strategy<Value = (Wpr, Wpr)> {
    (3..=max_n)
        .prop_flat_map(move |n| (Just(n), 2..=max_w.min(n - 1), 2..=max_w.min(n - 1)))
        .prop_flat_map(|(n, wx, wy)| {
            let all: Vec<usize> = (0..n).collect();
            (Just(n), subsequence(all.clone(), wx), subsequence(all, wy))
        })
        .prop_map(|(n, x, y)| (Wpr::new(x, n).unwrap(), Wpr::new(y, n).unwrap()))
}

proptest! {
    #[test]
    fn binary_wpr_dopr_round_trip(wpr in wpr_strategy(64, 8)) {
        let bin = BinaryCode::from_wpr(&wpr);
        prop_assert_eq!(&wpr_from_binary(&bin).unwrap(), &wpr);
        let dopr = dopr_from_wpr(&wpr);
        prop_assert_eq!(dopr.dops().iter().sum::<usize>(), wpr.n());
        prop_assert_eq!(dopr.weight(), wpr.weight());
        // anchoring at 0 is a shift of the original
        let back = wpr_from_dopr(&dopr);
        prop_assert_eq!(&back, &wpr.shifted(wpr.n() - wpr.positions()[0]));
    }

    #[test]
    fn standard_form_shift_invariant(wpr in wpr_strategy(48, 7), a in 0usize..48) {
        let a = a % wpr.n();
        let s1 = standardize(&dopr_from_wpr(&wpr));
        let s2 = standardize(&dopr_from_wpr(&wpr.shifted(a)));
        prop_assert_eq!(&s1, &s2);
        prop_assert!(is_standard(&s1));
        prop_assert_eq!(&standardize(&s1), &s1);
        prop_assert!(conforms_to_ranges(&s1));
    }

    #[test]
    fn rotation_preserves_sum_and_class(wpr in wpr_strategy(48, 7), k in 0usize..8) {
        let d = dopr_from_wpr(&wpr);
        let r = d.rotated(k % d.weight());
        prop_assert_eq!(r.dops().iter().sum::<usize>(), d.n());
        prop_assert_eq!(standardize(&r), standardize(&d));
    }

    #[test]
    fn auto_correlation_routes_agree(wpr in wpr_strategy(64, 6)) {
        let d = dopr_from_wpr(&wpr);
        let bf = autocorr_bruteforce(&d.to_binary()).unwrap();
        let ed = autocorr_edop(&edop_full(&d));
        prop_assert_eq!(bf.lambda_ax, ed.lambda_ax);
        let w = d.weight() as u64;
        prop_assert!(ed.comparisons <= w * (w - 1).pow(3) / 2);
    }

    #[test]
    fn cross_correlation_routes_agree((x, y) in pair_strategy(64, 6)) {
        let (dx, dy) = (dopr_from_wpr(&x), dopr_from_wpr(&y));
        let bf = crosscorr_bruteforce(&BinaryCode::from_wpr(&x), &BinaryCode::from_wpr(&y)).unwrap();
        let ed = crosscorr_edop(&edop_full(&dx), &edop_full(&dy));
        prop_assert_eq!(bf.lambda_cxy, ed.lambda_cxy);
        let (wx, wy) = (dx.weight() as u64, dy.weight() as u64);
        let w = wx.max(wy);
        prop_assert!(ed.comparisons <= w * w * (w - 1) * (w - 1));
    }

    #[test]
    fn cross_correlation_symmetric((x, y) in pair_strategy(40, 6)) {
        let (mx, my) = (edop_full(&dopr_from_wpr(&x)), edop_full(&dopr_from_wpr(&y)));
        prop_assert_eq!(crosscorr_edop(&mx, &my).lambda_cxy, crosscorr_edop(&my, &mx).lambda_cxy);
    }

    #[test]
    fn edop_structure(wpr in wpr_strategy(48, 7)) {
        let d = dopr_from_wpr(&wpr);
        let m = edop_full(&d);
        prop_assert!(check_complement_closure(&m));
        // zero-augmented rows are the WPRs of the shifts anchoring each one-bit
        let p = wpr_from_dopr(&d);
        let mut rows: Vec<Vec<usize>> = zero_augment(&m).rows().to_vec();
        let mut shifts: Vec<Vec<usize>> = p
            .positions()
            .iter()
            .map(|&a| p.shifted(d.n() - a).positions().to_vec())
            .collect();
        rows.sort();
        shifts.sort();
        prop_assert_eq!(rows, shifts);
    }

    #[test]
    fn partial_matrix_matches_prefix(wpr in wpr_strategy(48, 7), u in 1usize..7) {
        let d = dopr_from_wpr(&wpr);
        let w = d.weight();
        prop_assume!(w >= 3);
        let u = 1 + u % (w - 1);
        let prefix = PartialDopr::new(d.dops()[..u].to_vec(), d.n(), w).unwrap();
        let part = edop_partial(&prefix);
        // the prefix code closes the cycle with the remaining gap
        let rest = d.n() - prefix.sum();
        let mut closed = d.dops()[..u].to_vec();
        closed.push(rest);
        let closed = Dopr::new(closed, d.n()).unwrap();
        prop_assert_eq!(part.cyclic_layout(), edop_full(&closed).rows().to_vec());
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn greedy_is_deterministic_clique(bits in proptest::collection::vec(any::<bool>(), 0..190)) {
        let n = (1..=20).find(|k| k * (k - 1) / 2 >= bits.len()).unwrap();
        let mut m = vec![vec![false; n]; n];
        let mut it = bits.iter().copied().chain(std::iter::repeat(false));
        for i in 0..n {
            for j in i + 1..n {
                let b = it.next().unwrap();
                m[i][j] = b;
                m[j][i] = b;
            }
        }
        let g = CodeGraph::from_adjacency(&m, 1);
        let c = greedy_clique(&g);
        prop_assert_eq!(&c, &greedy_clique(&g));
        prop_assert!(g.is_clique(&c));
        for c in enumerate_cliques(&g) {
            prop_assert!(g.is_clique(&c));
        }
    }
}

#[test]
fn exhaustive_canonical_properties_small() {
    for n in 3..=12 {
        for w in 2..=5.min(n - 1) {
            for s in common::all_subsets(n, w) {
                let wpr = Wpr::new(s, n).unwrap();
                let d = dopr_from_wpr(&wpr);
                let st = standardize(&d);
                assert!(conforms_to_ranges(&st), "{d} at n={n}");
                assert_eq!(st, standardize(&dopr_from_wpr(&wpr.shifted(1))));
            }
        }
    }
}

#[test]
fn edges_match_bruteforce_on_pool() {
    let pool = common::exhaustive_pool(19, 3, 1);
    let mats: Vec<_> = pool.iter().map(edop_full).collect();
    let g = build_graph(&mats, 1);
    for i in 0..pool.len() {
        for j in i + 1..pool.len() {
            let bf = crosscorr_bruteforce(&pool[i].to_binary(), &pool[j].to_binary()).unwrap();
            assert_eq!(g.is_adjacent(i, j), bf.lambda_cxy <= 1);
        }
    }
}

/// Distinct maximal cliques of one graph can never be mutually compatible,
/// so sets drawn from one maximal-clique listing are separated.
#[test]
fn maximal_cliques_are_separated() {
    use ooc_design::clique::all_maximal_cliques;
    use ooc_design::correlation::interset_crosscorr;
    for n in [13, 16, 19] {
        let pool = common::exhaustive_pool(n, 3, 1);
        let mats: Vec<_> = pool.iter().map(edop_full).collect();
        let g = build_graph(&mats, 1);
        let cliques = all_maximal_cliques(&g).unwrap();
        for a in 0..cliques.len() {
            for b in a + 1..cliques.len() {
                let ca: Vec<Dopr> = cliques[a].iter().map(|&i| pool[i].clone()).collect();
                let cb: Vec<Dopr> = cliques[b].iter().map(|&i| pool[i].clone()).collect();
                assert!(interset_crosscorr(&ca, &cb).unwrap() >= 2, "n={n}");
            }
        }
    }
}

/// Relaxing the correlation constraint never shrinks the largest set.
#[test]
fn max_set_size_monotone_in_lambda() {
    use ooc_design::clique::all_maximal_cliques;
    for n in 7..=19 {
        let best = |lambda: usize| {
            let pool = common::exhaustive_pool(n, 3, lambda);
            let mats: Vec<_> = pool.iter().map(edop_full).collect();
            let g = build_graph(&mats, lambda);
            all_maximal_cliques(&g)
                .unwrap()
                .iter()
                .map(Vec::len)
                .max()
                .unwrap_or(0)
        };
        let (b1, b2) = (best(1), best(2));
        assert!(b1 <= b2, "n={n}: {b1} > {b2}");
        assert!(b1 <= johnson_bound(n, 3, 1).unwrap());
        assert!(b2 <= johnson_bound(n, 3, 2).unwrap());
    }
}

#[test]
fn designs_satisfy_invariants_over_range() {
    let mut cases: Vec<(usize, usize)> = (7..=40).map(|n| (n, 3)).collect();
    cases.extend((13..=40).map(|n| (n, 4)));
    cases.extend([(21, 5), (31, 5), (41, 5)]);
    for (n, w) in cases {
        let p = CodeParams::new(n, w, 1, 1).unwrap();
        let d = design_fixed_detailed(&p, None).unwrap();
        assert!(
            d.discarded.is_empty(),
            "({n},{w}) discarded {:?}",
            d.discarded
        );
        let fam = d.family;
        for s in &fam.sets {
            assert!(s.satisfies_constraints());
            for c in &s.codes {
                assert!(is_standard(c) && conforms_to_ranges(c));
                assert!(autocorr_bruteforce(&c.to_binary()).unwrap().lambda_ax <= 1);
            }
        }
        if fam.sets.len() >= 2 {
            assert_eq!(fam.interset_lambda, Some(2), "({n},{w})");
        }
    }
}
