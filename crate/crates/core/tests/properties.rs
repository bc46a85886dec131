use proptest::prelude::*;

use modfact::factors::{
    build_modular_factor, build_modular_factor_even, validate_factor, Factor, Factorization,
};
use modfact::numtheory::gcd;
use modfact::oracle::independent_hamiltonicity_check;
use modfact::pairing::{classify_pair, nth_union_edge, union_walk, WalkEnd};
use modfact::product::{build_product_factor, ProductFactor};

fn odd_order() -> impl Strategy<Value = usize> {
    (1usize..=49).prop_map(|h| 2 * h + 1)
}

fn modular_pair() -> impl Strategy<Value = (usize, usize, usize)> {
    odd_order()
        .prop_flat_map(|n| (Just(n), 0..n, 0..n))
        .prop_filter("distinct indices", |(_, k, l)| k != l)
}

proptest! {
    #[test]
    fn factor_json_round_trips(n in 3usize..80, k_seed in any::<usize>()) {
        let k = k_seed % n;
        let f = if n % 2 == 1 {
            build_modular_factor(n, k).unwrap()
        } else {
            build_modular_factor_even(n, k).unwrap()
        };
        let text = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<Factor>(&text).unwrap(), f);
    }

    #[test]
    fn product_json_round_trips(s in 1usize..=4, t in 1usize..=4, k in any::<usize>(), l in any::<usize>()) {
        let (s, t) = (2 * s + 1, 2 * t + 1);
        let d = build_product_factor(s, t, k % s, l % t).unwrap();
        let text = serde_json::to_string(&d).unwrap();
        prop_assert_eq!(serde_json::from_str::<ProductFactor>(&text).unwrap(), d);
    }

    #[test]
    fn classification_is_symmetric((n, k, l) in modular_pair()) {
        let f = build_modular_factor(n, k).unwrap();
        let g = build_modular_factor(n, l).unwrap();
        let ab = classify_pair(&f, &g).unwrap();
        let ba = classify_pair(&g, &f).unwrap();
        prop_assert_eq!(ab.perfect, ba.perfect);
        prop_assert_eq!(ab.criterion.map(|c| c.agrees), Some(true));
        prop_assert_eq!(independent_hamiltonicity_check(&f, &g), ab.perfect);
    }

    #[test]
    fn walks_never_repeat_and_stay_within_n((n, k, l) in modular_pair()) {
        let w = union_walk(&build_modular_factor(n, k).unwrap(), &build_modular_factor(n, l).unwrap()).unwrap();
        prop_assert!(w.vertices.len() <= n);
        let mut seen = w.vertices.clone();
        seen.sort_unstable();
        seen.dedup();
        prop_assert_eq!(seen.len(), w.vertices.len());
        prop_assert_ne!(w.end, WalkEnd::ClosedCycle);
        // The walk always ends at F_l's isolated vertex.
        prop_assert_eq!(*w.vertices.last().unwrap(), (0..n).find(|v| 2 * v % n == l).unwrap());
    }

    #[test]
    fn closed_form_matches_prefix_of_any_walk((n, k, l) in modular_pair()) {
        // Also holds before a non-spanning walk stops.
        let w = union_walk(&build_modular_factor(n, k).unwrap(), &build_modular_factor(n, l).unwrap()).unwrap();
        for i in 1..=w.steps.len() {
            prop_assert_eq!(nth_union_edge(k, l, n, i).unwrap(), w.edge(i).unwrap());
        }
    }

    #[test]
    fn shuffled_factorizations_validate(n in odd_order(), rot in any::<usize>()) {
        let mut fs: Vec<Factor> = (0..n).map(|k| build_modular_factor(n, k).unwrap()).collect();
        fs.rotate_left(rot % n);
        let fz = Factorization::new(n, fs).unwrap();
        let text = serde_json::to_string(&fz).unwrap();
        prop_assert_eq!(serde_json::from_str::<Factorization>(&text).unwrap(), fz);
    }
}

#[test]
fn non_coprime_unions_split_into_a_short_path_and_cycles() {
    // Walk from F_k's isolated vertex stops early; every other vertex has
    // degree two in the union, so the remainder is a disjoint union of cycles.
    for n in (3..=45).step_by(2) {
        for k in 0..n {
            for l in 0..n {
                let diff = (k + n - l) % n;
                if k == l || gcd(diff as i64, n as i64) == 1 {
                    continue;
                }
                let f = build_modular_factor(n, k).unwrap();
                let g = build_modular_factor(n, l).unwrap();
                let w = union_walk(&f, &g).unwrap();
                assert_eq!(w.end, WalkEnd::StoppedEarly);
                assert!(w.vertices.len() < n);
                let mut degree = vec![0; n];
                for e in f.edges().iter().chain(g.edges()) {
                    degree[e.u()] += 1;
                    degree[e.v()] += 1;
                }
                for v in (0..n).filter(|v| !w.vertices.contains(v)) {
                    assert_eq!(degree[v], 2, "n={n} k={k} l={l} v={v}");
                }
            }
        }
    }
}

#[test]
fn external_factors_get_a_verdict_without_gcd_check() {
    // A non-modular near-one-factorization of K_5 relabels F_k by the
    // permutation 0→1→2→0.
    let relabel = |x: usize| match x {
        0 => 1,
        1 => 2,
        2 => 0,
        other => other,
    };
    let f = build_modular_factor(5, 0).unwrap();
    let g = build_modular_factor(5, 1).unwrap();
    let map = |h: &Factor| {
        Factor::from_parts(
            5,
            None,
            h.isolated().map(relabel),
            h.edges()
                .iter()
                .map(|e| modfact::factors::Edge::new(relabel(e.u()), relabel(e.v())).unwrap()),
        )
    };
    let (f2, g2) = (map(&f), map(&g));
    assert_eq!(validate_factor(&f2), Ok(()));
    let c = classify_pair(&f2, &g2).unwrap();
    assert!(c.perfect);
    assert!(c.criterion.is_none());
}
